//! The reduced operator `T^` on the range space of the weight.
//!
//! For an A-bounded `T` there is a unique operator `T^` on the Hilbert
//! space `R(A^{1/2})` with `Z_A T = T^ Z_A`. In finite dimension the map
//! `A^{1/2} x -> P x` is a unitary from that space onto `R(A)`, and under it
//! `T^` becomes `A^{1/2} T (A^{1/2})^+` restricted to `R(A)`. We store it
//! as an `r x r` matrix in the orthonormal eigenbasis `V` of `A` on its
//! range, so every A-quantity of `T` is an ordinary (unweighted) quantity
//! of this matrix.
//!
//! The identification only holds because finite-dimensional ranges are
//! closed; nothing here attempts the infinite-dimensional completion.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::{AOperator, WeightGeometry};
use crate::matrix::{spectral_norm, vnorm, CMatrix, Mat, Vector};
use crate::sampling;

/// Number of random probe vectors for the intertwining residual.
pub const PROBE_COUNT: usize = 32;
const PROBE_SEED: u64 = 0x005E_ED0F_7EA7;

#[derive(Debug, Clone)]
pub struct ReducedOperator {
    mat: Mat,
    geom: Arc<WeightGeometry>,
    intertwine_residual: f64,
}

impl ReducedOperator {
    /// `r x r` matrix of `T^` in the range basis.
    pub fn mat(&self) -> &Mat {
        &self.mat
    }

    pub fn geom(&self) -> &WeightGeometry {
        &self.geom
    }

    /// `max_x ||V T^ V^* A^{1/2} x - A^{1/2} T x|| / (||T||_A ||x||_A + eps)`
    /// over [`PROBE_COUNT`] seeded unit probes.
    pub fn intertwine_residual(&self) -> f64 {
        self.intertwine_residual
    }

    pub fn rank(&self) -> usize {
        self.mat.nrows()
    }

    /// Lifts a vector `y` of the range coordinates to `x` in `C^n` with
    /// `P A^{1/2} x = V y`, i.e. `||x||_A = ||y||`.
    pub fn lift(&self, y: &Vector) -> Vector {
        self.geom.pinv_sqrt_a() * (self.geom.range_basis() * y)
    }
}

/// Builds `T^ = V^* A^{1/2} T (A^{1/2})^+ V`.
pub fn reduce(op: &AOperator) -> Result<ReducedOperator> {
    op.require_bounded()?;
    let mat = reduced_matrix(op);
    let intertwine_residual = intertwining_residual(op, &mat);
    Ok(ReducedOperator {
        mat,
        geom: op.geom_arc().clone(),
        intertwine_residual,
    })
}

/// `V^* A^{1/2} T (A^{1/2})^+ V` written as `diag(s) V^* T V diag(1/s)`
/// with `s` the square roots of the nonzero eigenvalues of `A`.
fn reduced_matrix(op: &AOperator) -> Mat {
    let geom = op.geom();
    let v = geom.range_basis();
    let roots: Vec<f64> = geom.range_eigvals().iter().map(|x| x.sqrt()).collect();
    let core = v.adjoint() * op.t().as_mat() * v;
    let r = roots.len();
    Mat::from_fn(r, r, |i, j| core[(i, j)] * (roots[i] / roots[j]))
}

fn intertwining_residual(op: &AOperator, mat: &Mat) -> f64 {
    let geom = op.geom();
    let n = geom.dim();
    let v = geom.range_basis();
    let s = geom.sqrt_a();
    let t = op.t().as_mat();
    let lifted = v * mat * v.adjoint() * s;
    let direct = s * t;
    let norm_a = spectral_norm(mat);
    let scale = spectral_norm(s) * op.t().op_norm();
    let mut rng = sampling::rng(PROBE_SEED);
    let mut worst: f64 = 0.0;
    for _ in 0..PROBE_COUNT {
        let x = sampling::unit_vector(&mut rng, n);
        let diff = vnorm(&(&lifted * &x - &direct * &x));
        let denom = norm_a * vnorm(&(s * &x)) + 1e-6 * scale + f64::MIN_POSITIVE;
        worst = worst.max(diff / denom);
    }
    worst
}

/// `||T||_A`, the largest singular value of `T^`.
pub fn a_op_seminorm(op: &AOperator) -> Result<f64> {
    Ok(spectral_norm(reduce(op)?.mat()))
}

/// `(||T^k||_A^{1/k})_{k = 1..n_max}`, each term from an explicit power of `T`.
pub fn gelfand_estimate(op: &AOperator, n_max: usize) -> Result<Vec<f64>> {
    let norms = power_seminorms(op, n_max)?;
    Ok(norms
        .iter()
        .enumerate()
        .map(|(k, nk)| nk.powf(1.0 / (k + 1) as f64))
        .collect())
}

/// `(||T^k||_A)_{k = 1..n_max}`.
pub fn power_seminorms(op: &AOperator, n_max: usize) -> Result<Vec<f64>> {
    op.require_bounded()?;
    let mut out = Vec::with_capacity(n_max);
    let n = op.t().dim();
    let mut acc = Mat::identity(n, n);
    for k in 1..=n_max {
        acc = &acc * op.t().as_mat();
        if acc.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Overflow { power: k });
        }
        let pk = op.sibling(CMatrix::new(acc.clone())?)?;
        // Powers of an A-bounded operator are A-bounded; the leak check is
        // skipped since it could only trip on accumulated rounding.
        let norm = spectral_norm(&reduced_matrix(&pk));
        if !norm.is_finite() {
            return Err(Error::Overflow { power: k });
        }
        out.push(norm);
    }
    Ok(out)
}
