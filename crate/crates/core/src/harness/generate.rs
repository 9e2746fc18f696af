//! Seeded random instances `(T, A)`.
//!
//! The weight is built from its eigendecomposition `A = U diag(lambda) U^*`
//! so its rank is exact. The operator is assembled in the same eigenbasis,
//! with the block mapping the null space into the range zeroed, then rotated
//! by a unitary that respects the range/null split. That keeps every kind
//! A-bounded by construction.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{CMatrix, Mat, C64};
use crate::sampling::{self, SeededRng};
use rand::Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightKind {
    Identity,
    FullRankRandom,
    RankDeficient(usize),
    /// Diagonal weight, some diagonal entries zero.
    Diagonal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OperatorKind {
    DenseRandom,
    Normal,
    Nilpotent,
    ACompatibleRandom,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub dim: usize,
    pub weight_kind: WeightKind,
    pub operator_kind: OperatorKind,
    pub seed: u64,
    #[serde(default = "unit_scale")]
    pub scale: f64,
}

fn unit_scale() -> f64 {
    1.0
}

impl InstanceSpec {
    pub fn new(
        dim: usize,
        weight_kind: WeightKind,
        operator_kind: OperatorKind,
        seed: u64,
    ) -> Self {
        Self {
            dim,
            weight_kind,
            operator_kind,
            seed,
            scale: 1.0,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::BadSpec("dimension must be at least 1".into()));
        }
        if !(self.scale.is_finite() && self.scale > 0.0) {
            return Err(Error::BadSpec(format!(
                "scale must be positive and finite, got {}",
                self.scale
            )));
        }
        if let WeightKind::RankDeficient(r) = self.weight_kind {
            if r == 0 || r > self.dim {
                return Err(Error::BadSpec(format!("rank {r} outside 1..={}", self.dim)));
            }
        }
        Ok(())
    }
}

/// Eigenvalue in `[e^-1, e]`.
fn positive_eigenvalue(rng: &mut SeededRng) -> f64 {
    rng.random_range(-1.0f64..1.0).exp()
}

/// Returns `(U, lambda)` with `A = U diag(lambda) U^*`.
fn weight_parts(spec: &InstanceSpec, rng: &mut SeededRng) -> (Mat, Vec<f64>) {
    let n = spec.dim;
    match spec.weight_kind {
        WeightKind::Identity => (Mat::identity(n, n), vec![1.0; n]),
        WeightKind::FullRankRandom => {
            let u = sampling::haar_unitary(rng, n);
            (u, (0..n).map(|_| positive_eigenvalue(rng)).collect())
        }
        WeightKind::RankDeficient(r) => {
            let u = sampling::haar_unitary(rng, n);
            (
                u,
                (0..n)
                    .map(|k| if k < r { positive_eigenvalue(rng) } else { 0.0 })
                    .collect(),
            )
        }
        WeightKind::Diagonal => {
            let mut lam: Vec<f64> = (0..n)
                .map(|_| {
                    if rng.random_bool(1.0 / 3.0) {
                        0.0
                    } else {
                        positive_eigenvalue(rng)
                    }
                })
                .collect();
            if lam.iter().all(|&x| x == 0.0) {
                let k = rng.random_range(0..n);
                lam[k] = positive_eigenvalue(rng);
            }
            (Mat::identity(n, n), lam)
        }
    }
}

/// Unitary acting separately on the range and null coordinates.
fn split_unitary(range: &[usize], null: &[usize], rng: &mut SeededRng) -> Mat {
    let n = range.len() + null.len();
    let mut q = Mat::zeros(n, n);
    for idx in [range, null] {
        let h = sampling::haar_unitary(rng, idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                q[(i, j)] = h[(a, b)];
            }
        }
    }
    q
}

/// Deterministic `(T, A)` for a spec.
pub fn generate(spec: &InstanceSpec) -> Result<(CMatrix, CMatrix)> {
    spec.validate()?;
    let n = spec.dim;
    let mut rng = sampling::rng(spec.seed);
    let (u, lam) = weight_parts(spec, &mut rng);

    let a = if spec.weight_kind == WeightKind::Identity {
        Mat::identity(n, n)
    } else {
        let d = Mat::from_diagonal(&nalgebra::DVector::from_iterator(
            n,
            lam.iter().map(|&x| C64::new(x, 0.0)),
        ));
        let a = &u * d * u.adjoint();
        (&a + a.adjoint()) * C64::new(0.5, 0.0)
    };

    let in_range: Vec<bool> = lam.iter().map(|&x| x > 0.0).collect();
    let range: Vec<usize> = (0..n).filter(|&k| in_range[k]).collect();
    let null: Vec<usize> = (0..n).filter(|&k| !in_range[k]).collect();

    let mut m = match spec.operator_kind {
        OperatorKind::DenseRandom | OperatorKind::ACompatibleRandom => {
            sampling::gaussian_matrix(&mut rng, n, n)
        }
        OperatorKind::Normal => {
            let mut m = Mat::zeros(n, n);
            for k in 0..n {
                m[(k, k)] = sampling::complex_gaussian(&mut rng);
            }
            m
        }
        OperatorKind::Nilpotent => {
            let mut m = Mat::zeros(n, n);
            for i in 0..n {
                for j in 0..i {
                    m[(i, j)] = sampling::complex_gaussian(&mut rng);
                }
            }
            m
        }
    };
    for i in 0..n {
        for j in 0..n {
            if in_range[i] && !in_range[j] {
                m[(i, j)] = C64::new(0.0, 0.0);
            } else if spec.operator_kind == OperatorKind::ACompatibleRandom && !in_range[i] {
                m[(i, j)] *= 3.0;
            }
        }
    }

    let q = &u * split_unitary(&range, &null, &mut rng);
    let t = &q * m * q.adjoint() * C64::new(spec.scale, 0.0);
    Ok((CMatrix::new(t)?, CMatrix::new(a)?))
}

/// All sixteen weight/operator combinations, in a fixed order; the rank of a
/// deficient weight is picked from `seed`.
pub fn combination(index: usize, dim: usize, seed: u64) -> (WeightKind, OperatorKind) {
    let weights = [
        WeightKind::Identity,
        WeightKind::FullRankRandom,
        WeightKind::RankDeficient(if dim > 1 {
            1 + (seed % (dim as u64 - 1)) as usize
        } else {
            1
        }),
        WeightKind::Diagonal,
    ];
    let ops = [
        OperatorKind::DenseRandom,
        OperatorKind::Normal,
        OperatorKind::Nilpotent,
        OperatorKind::ACompatibleRandom,
    ];
    let k = index % 16;
    (weights[k / 4], ops[k % 4])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{is_a_bounded, WeightGeometry, DEFAULT_RANK_TOL};

    #[test]
    fn identity_nilpotent_pair() {
        let (t, a) = generate(&InstanceSpec::new(
            2,
            WeightKind::Identity,
            OperatorKind::Nilpotent,
            1,
        ))
        .unwrap();
        assert_eq!(a, CMatrix::identity(2));
        let t2 = t.as_mat() * t.as_mat();
        assert!(t2.norm() < 1e-14 && t.op_norm() > 1e-3);
    }

    #[test]
    fn rank_deficient_compatible_is_bounded() {
        let spec = InstanceSpec::new(
            4,
            WeightKind::RankDeficient(2),
            OperatorKind::ACompatibleRandom,
            7,
        );
        let (t, a) = generate(&spec).unwrap();
        let g = WeightGeometry::new(&a, DEFAULT_RANK_TOL).unwrap();
        assert_eq!(g.rank(), 2);
        let (ok, res) = is_a_bounded(&t, &g, 1e-8).unwrap();
        assert!(ok, "{res}");
    }

    #[test]
    fn every_kind_is_bounded_and_deterministic() {
        for n in 1..=5 {
            for k in 0..16 {
                let seed = sampling::derive_seed(99, (n * 16 + k) as u64);
                let (w, o) = combination(k, n, seed);
                let spec = InstanceSpec::new(n, w, o, seed);
                let (t, a) = generate(&spec).unwrap();
                let (t2, a2) = generate(&spec).unwrap();
                assert_eq!((t.clone(), a.clone()), (t2, a2));
                let g = WeightGeometry::new(&a, DEFAULT_RANK_TOL).unwrap();
                if let WeightKind::RankDeficient(r) = w {
                    assert_eq!(g.rank(), r);
                }
                assert!(is_a_bounded(&t, &g, 1e-8).unwrap().0, "{spec:?}");
            }
        }
    }

    #[test]
    fn normal_kind_commutes_with_adjoint() {
        let (t, _) = generate(&InstanceSpec::new(
            5,
            WeightKind::FullRankRandom,
            OperatorKind::Normal,
            3,
        ))
        .unwrap();
        let m = t.as_mat();
        assert!((m * m.adjoint() - m.adjoint() * m).norm() < 1e-13);
    }

    #[test]
    fn bad_specs() {
        assert!(matches!(
            generate(&InstanceSpec::new(
                0,
                WeightKind::Identity,
                OperatorKind::Normal,
                1
            )),
            Err(Error::BadSpec(_))
        ));
        assert!(matches!(
            generate(&InstanceSpec::new(
                3,
                WeightKind::RankDeficient(4),
                OperatorKind::Normal,
                1
            )),
            Err(Error::BadSpec(_))
        ));
    }

    #[test]
    fn spec_json_shape() {
        let spec = InstanceSpec::new(
            3,
            WeightKind::RankDeficient(2),
            OperatorKind::ACompatibleRandom,
            5,
        );
        let s = serde_json::to_string(&spec).unwrap();
        assert_eq!(
            s,
            r#"{"dim":3,"weight_kind":{"rank_deficient":2},"operator_kind":"a_compatible_random","seed":5,"scale":1.0}"#
        );
        assert_eq!(serde_json::from_str::<InstanceSpec>(&s).unwrap(), spec);
    }
}
