use std::sync::Arc;

use proptest::prelude::*;
use semihilbert::harness::{self, combination, InstanceSpec, OperatorKind, Tolerances, WeightKind};
use semihilbert::ranges::{self, RangeConfig};
use semihilbert::{a_adjoint, reduce, reduced_solution, sampling, variational};
use semihilbert::{AOperator, CMatrix, Mat, WeightGeometry, C64};

fn spec_strategy(max_dim: usize) -> impl Strategy<Value = InstanceSpec> {
    (1..=max_dim, 0usize..16, any::<u64>()).prop_map(|(n, k, seed)| {
        let (w, o) = combination(k, n, seed);
        InstanceSpec::new(n, w, o, seed)
    })
}

fn instance(spec: &InstanceSpec) -> AOperator {
    let (t, a) = harness::generate(spec).unwrap();
    AOperator::from_matrices(&t, &a).unwrap()
}

/// Same weight, different operator: the weight depends only on dimension,
/// weight kind and seed.
fn partner(spec: &InstanceSpec, op: &AOperator) -> AOperator {
    let other = InstanceSpec {
        operator_kind: OperatorKind::DenseRandom,
        ..*spec
    };
    let (s, a) = harness::generate(&other).unwrap();
    assert_eq!(&a, op.geom().a());
    op.sibling(s).unwrap()
}

fn close(a: &Mat, b: &Mat) -> f64 {
    (a - b).norm() / (1.0 + a.norm().max(b.norm()))
}

fn cfg() -> ProptestConfig {
    ProptestConfig {
        cases: 48,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn seminorm_matches_inner_product(spec in spec_strategy(6), s in any::<u64>()) {
        let g = instance(&spec).geom().clone();
        let mut rng = sampling::rng(s);
        let x = sampling::gaussian_vector(&mut rng, spec.dim);
        let y = sampling::gaussian_vector(&mut rng, spec.dim);
        let nx = g.a_norm_vec(&x).unwrap();
        let ixx = g.a_inner(&x, &x).unwrap();
        prop_assert!((nx * nx - ixx.re).abs() <= 1e-12 * (1.0 + ixx.re) && ixx.im.abs() <= 1e-12 * (1.0 + ixx.re));
        let sq = |v| g.a_norm_vec(&v).unwrap().powi(2);
        let lhs = sq(&x + &y) + sq(&x - &y);
        let rhs = 2.0 * sq(x.clone()) + 2.0 * sq(y.clone());
        prop_assert!((lhs - rhs).abs() <= 1e-10 * (1.0 + rhs));
    }

    #[test]
    fn weight_reconstruction(spec in spec_strategy(6)) {
        let op = instance(&spec);
        let g = op.geom();
        prop_assert!(g.reconstruction_residual() <= 1e-10 * g.a().op_norm());
        let root = g.sqrt_a();
        prop_assert!(close(&(root * root), g.a().as_mat()) <= 1e-12);
    }

    #[test]
    fn reduced_solution_round_trip(n in 1usize..6, k in 1usize..6, s in any::<u64>()) {
        let k = k.min(n);
        let mut rng = sampling::rng(s);
        let tm = sampling::gaussian_matrix(&mut rng, n, k) * sampling::gaussian_matrix(&mut rng, k, n);
        let q0 = tm.adjoint() * sampling::gaussian_matrix(&mut rng, n, n);
        let um = &tm * &q0;
        let q = reduced_solution(&CMatrix::new(tm).unwrap(), &CMatrix::new(um).unwrap(), 1e-10).unwrap();
        prop_assert!(close(&q, &q0) <= 1e-7, "{}", close(&q, &q0));
    }

    #[test]
    fn adjoint_identity(spec in spec_strategy(6)) {
        let op = instance(&spec);
        let s = a_adjoint(&op).unwrap();
        let a = op.geom().a().as_mat();
        let t = op.t().as_mat();
        let res = (a * s.as_mat() - t.adjoint() * a).norm();
        prop_assert!(res <= 1e-10 * (1.0 + a.norm() * t.norm()), "{res}");
    }

    #[test]
    fn reduction_is_multiplicative(spec in spec_strategy(6)) {
        let t = instance(&spec);
        let s = partner(&spec, &t);
        let ts = reduce(&t.compose(&s).unwrap()).unwrap();
        let prod = reduce(&t).unwrap().mat() * reduce(&s).unwrap().mat();
        prop_assert!(close(ts.mat(), &prod) <= 1e-10);
        let sub = ranges::a_spectral_radius(&t).unwrap();
        let n_t = semihilbert::reduction::a_op_seminorm(&t).unwrap();
        let n_s = semihilbert::reduction::a_op_seminorm(&s).unwrap();
        let n_ts = semihilbert::reduction::a_op_seminorm(&t.compose(&s).unwrap()).unwrap();
        prop_assert!(n_ts <= n_t * n_s + 1e-10 * (1.0 + n_t * n_s));
        prop_assert!(sub <= n_t * (1.0 + 1e-10));
    }

    #[test]
    fn reduction_commutes_with_shifts(spec in spec_strategy(6), re in -3.0f64..3.0, im in -3.0f64..3.0) {
        let op = instance(&spec);
        let lambda = C64::new(re, im);
        let m = reduce(&op).unwrap();
        let shifted = reduce(&op.shifted(lambda).unwrap()).unwrap();
        let r = m.rank();
        let expect = m.mat() + Mat::identity(r, r) * lambda;
        prop_assert!(close(shifted.mat(), &expect) <= 1e-10);
    }

    #[test]
    fn invariants_scale(spec in spec_strategy(5), s in 0.1f64..10.0) {
        let cfg = RangeConfig::default();
        let op = instance(&spec);
        let big = op.scaled(C64::new(s, 0.0)).unwrap();
        let q = |o: &AOperator| {
            vec![
                semihilbert::reduction::a_op_seminorm(o).unwrap(),
                ranges::a_numerical_radius(o, &cfg).unwrap(),
                ranges::a_spectral_radius(o).unwrap(),
                ranges::omega_max(o, &cfg).unwrap(),
                ranges::m_max(o, &cfg).unwrap(),
            ]
        };
        let (a, b) = (q(&op), q(&big));
        // Eigenvalues of a defective block move by eps^(1/k) under rounding.
        let eig_tol = 10.0 * f64::EPSILON.powf(1.0 / spec.dim as f64);
        for (k, (x, y)) in a.iter().zip(&b).enumerate() {
            let tol = if k == 2 { eig_tol } else { 1e-8 };
            prop_assert!((s * x - y).abs() <= tol * (1.0 + s * a[0]), "{k}: {x} {y}");
        }
        let w = ranges::a_numrange(&op, 64).unwrap();
        let wb = ranges::a_numrange(&big, 64).unwrap();
        for (h, hb) in w.support.iter().zip(&wb.support) {
            prop_assert!((s * h - hb).abs() <= 1e-9 * (1.0 + s * a[0]));
        }
    }

    #[test]
    fn wmax_inside_range_closure(spec in spec_strategy(6)) {
        let op = instance(&spec);
        let cfg = RangeConfig::default();
        let w = ranges::a_numrange(&op, 720).unwrap();
        let mr = ranges::a_max_numrange(&op, &cfg).unwrap();
        let norm = semihilbert::reduction::a_op_seminorm(&op).unwrap();
        for (h, hm) in w.support.iter().zip(&mr.region.support) {
            prop_assert!(hm - h <= 1e-8 * (1.0 + norm));
        }
        // Points realized inside the maximal subspace respect its support function.
        let mut rng = sampling::rng(spec.seed ^ 1);
        let k = mr.compression.nrows();
        for _ in 0..16 {
            let y = sampling::unit_vector(&mut rng, k);
            let z = y.dotc(&(&mr.compression * &y));
            for (&th, &h) in mr.region.angles.iter().zip(&mr.region.support) {
                prop_assert!((C64::from_polar(1.0, -th) * z).re <= h + 1e-6);
            }
        }
    }

    #[test]
    fn center_translates(spec in spec_strategy(5), re in -2.0f64..2.0, im in -2.0f64..2.0) {
        let op = instance(&spec);
        let mu = C64::new(re, im);
        let a = variational::center_of_mass(&op, 1e-7).unwrap();
        let b = variational::center_of_mass(&op.shifted(mu).unwrap(), 1e-7).unwrap();
        let norm = semihilbert::reduction::a_op_seminorm(&op).unwrap();
        prop_assert!((b.c - a.c - mu).norm() <= 1e-7 * (1.0 + norm), "{} vs {}", b.c, a.c + mu);
        prop_assert!((b.d - a.d).abs() <= 1e-7 * (1.0 + norm));
    }

    #[test]
    fn center_is_stationary(spec in spec_strategy(5)) {
        let op = instance(&spec);
        let mc = variational::center_of_mass(&op, 1e-7).unwrap();
        let norm = semihilbert::reduction::a_op_seminorm(&op).unwrap();
        let step = 1e-4 * (1.0 + norm);
        for k in 0..16 {
            let delta = C64::from_polar(step, std::f64::consts::TAU * k as f64 / 16.0);
            let g = semihilbert::reduction::a_op_seminorm(&op.shifted(-(mc.c + delta)).unwrap()).unwrap();
            prop_assert!(g >= mc.d - mc.certified_gap - 1e-12);
        }
        prop_assert!((mc.d * mc.d - mc.formula_d2).abs() <= 1e-6 * (1.0 + norm * norm));
    }

    #[test]
    fn reports_are_deterministic(spec in spec_strategy(4)) {
        let tols = Tolerances::default();
        let a = harness::verify_spec(&spec, &tols).unwrap().to_json();
        let b = harness::verify_spec(&spec, &tols).unwrap().to_json();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn identity_weight_reduces_to_matrix() {
    let (t, _) = harness::generate(&InstanceSpec::new(
        4,
        WeightKind::Identity,
        OperatorKind::DenseRandom,
        3,
    ))
    .unwrap();
    let geom = Arc::new(WeightGeometry::new(&CMatrix::identity(4), 1e-10).unwrap());
    let op = AOperator::new(t.clone(), geom).unwrap();
    let red = reduce(&op).unwrap();
    let sv = |m: &Mat| m.clone().svd(false, false).singular_values;
    let (a, b) = (sv(red.mat()), sv(t.as_mat()));
    assert!((a - b).norm() < 1e-12);
}

#[test]
fn replayed_failure_artifact_matches() {
    let dir = tempfile::tempdir().unwrap();
    let spec = InstanceSpec::new(3, WeightKind::RankDeficient(2), OperatorKind::Nilpotent, 17);
    let (t, a) = harness::generate(&spec).unwrap();
    let file = harness::ReplayFile {
        spec,
        t,
        a,
        tolerances: Tolerances::default(),
    };
    let path = dir.path().join("instance.json");
    file.write(&path).unwrap();
    let direct = harness::verify_spec(&spec, &Tolerances::default()).unwrap();
    let replayed = harness::replay_path(&path).unwrap();
    assert_eq!(direct.to_json(), replayed.to_json());
    for (x, y) in direct.theorems.iter().zip(&replayed.theorems) {
        assert_eq!(x.verdict, y.verdict);
        assert!((x.slack - y.slack).abs() <= 1e-12 || x.slack == y.slack);
    }
}
