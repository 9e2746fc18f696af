//! Semi-Hilbert geometry induced by a positive semidefinite weight `A`.
//!
//! A weight defines the sesquilinear form `<x, y>_A = <Ax, y>` and the
//! seminorm `||x||_A = ||A^{1/2} x||`, which vanishes exactly on the null
//! space of `A`. Everything here is finite dimensional, so the ranges of
//! `A` and `A^{1/2}` coincide and are closed.
//!
//! [`WeightGeometry`] caches the eigendecomposition of `A` together with
//! `A^{1/2}`, the pseudo-inverses, an orthonormal basis of the range and the
//! orthogonal projector onto it. All pseudo-inverses come from this single
//! eigendecomposition so that downstream code sees one consistent range.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::{spectral_norm, vnorm, CMatrix, Mat, Vector, C64};

/// Default relative threshold below which eigenvalues of the weight count as zero.
pub const DEFAULT_RANK_TOL: f64 = 1e-10;

/// Default relative residual accepted for `T(N(A)) ⊆ N(A)`.
pub const DEFAULT_BOUND_TOL: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct WeightGeometry {
    a: CMatrix,
    eigvals: Vec<f64>,
    eigvecs: Mat,
    rank: usize,
    sqrt_a: Mat,
    pinv_sqrt_a: Mat,
    pinv_a: Mat,
    range_basis: Mat,
    null_basis: Mat,
    projector: Mat,
    rank_tol: f64,
}

/// Validates `A` and builds its geometry. See [`WeightGeometry::new`].
pub fn build_geometry(a: &CMatrix, rank_tol: f64) -> Result<WeightGeometry> {
    WeightGeometry::new(a, rank_tol)
}

impl WeightGeometry {
    /// Eigenvalues at or below `rank_tol * max(lambda_max, 1)` are treated as
    /// zero; negative eigenvalues down to `-rank_tol * ||A||` are clamped.
    pub fn new(a: &CMatrix, rank_tol: f64) -> Result<Self> {
        let m = a.as_mat();
        let n = a.dim();
        let scale = linalg::frobenius(m);
        if scale == 0.0 {
            return Err(Error::ZeroWeight);
        }
        let asymmetry = linalg::frobenius(&(m - m.adjoint())) / scale;
        if asymmetry > rank_tol.max(f64::EPSILON * 16.0) {
            return Err(Error::NotHermitian { asymmetry });
        }

        let (raw_vals, eigvecs) = if is_diagonal(m) {
            diagonal_eig(m)
        } else {
            linalg::hermitian_eig(m)?
        };
        let norm = raw_vals.iter().map(|v| v.abs()).fold(0.0, f64::max);
        if let Some(&lowest) = raw_vals.last() {
            if lowest < -rank_tol * norm {
                return Err(Error::NotPositive { eigenvalue: lowest });
            }
        }
        let cutoff = rank_tol * raw_vals[0].max(1.0);
        let rank = raw_vals.iter().filter(|&&v| v > cutoff).count();
        if rank == 0 {
            return Err(Error::ZeroWeight);
        }
        let eigvals: Vec<f64> = raw_vals
            .iter()
            .map(|&v| if v > cutoff { v } else { 0.0 })
            .collect();

        let range_basis = eigvecs.columns(0, rank).into_owned();
        let null_basis = eigvecs.columns(rank, n - rank).into_owned();
        let spectral = |g: &dyn Fn(f64) -> f64| -> Mat {
            let d: Vec<C64> = eigvals[..rank]
                .iter()
                .map(|&v| C64::new(g(v), 0.0))
                .collect();
            let d = Mat::from_diagonal(&Vector::from_vec(d));
            &range_basis * d * range_basis.adjoint()
        };
        let sqrt_a = spectral(&f64::sqrt);
        let pinv_sqrt_a = spectral(&|v| 1.0 / v.sqrt());
        let pinv_a = spectral(&|v| 1.0 / v);
        let projector = &range_basis * range_basis.adjoint();

        Ok(Self {
            a: a.clone(),
            eigvals,
            eigvecs,
            rank,
            sqrt_a,
            pinv_sqrt_a,
            pinv_a,
            range_basis,
            null_basis,
            projector,
            rank_tol,
        })
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn a(&self) -> &CMatrix {
        &self.a
    }

    /// Eigenvalues of `A` in descending order, sub-threshold ones set to zero.
    pub fn eigvals(&self) -> &[f64] {
        &self.eigvals
    }

    pub fn eigvecs(&self) -> &Mat {
        &self.eigvecs
    }

    /// The nonzero part of the spectrum, matching the columns of [`Self::range_basis`].
    pub fn range_eigvals(&self) -> &[f64] {
        &self.eigvals[..self.rank]
    }

    pub fn sqrt_a(&self) -> &Mat {
        &self.sqrt_a
    }

    pub fn pinv_sqrt_a(&self) -> &Mat {
        &self.pinv_sqrt_a
    }

    pub fn pinv_a(&self) -> &Mat {
        &self.pinv_a
    }

    /// Column-orthonormal `n x r` basis of the range of `A`.
    pub fn range_basis(&self) -> &Mat {
        &self.range_basis
    }

    /// Column-orthonormal `n x (n - r)` basis of the null space of `A`.
    pub fn null_basis(&self) -> &Mat {
        &self.null_basis
    }

    /// Orthogonal projector onto the range of `A`.
    pub fn projector(&self) -> &Mat {
        &self.projector
    }

    pub fn rank_tol(&self) -> f64 {
        self.rank_tol
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if found != self.dim() {
            return Err(Error::DimMismatch {
                expected: self.dim(),
                found,
            });
        }
        Ok(())
    }

    /// `<x, y>_A = <Ax, y> = y^* A x`.
    pub fn a_inner(&self, x: &Vector, y: &Vector) -> Result<C64> {
        self.check_dim(x.len())?;
        self.check_dim(y.len())?;
        let ax = self.a.as_mat() * x;
        Ok(y.dotc(&ax))
    }

    /// `||x||_A = ||A^{1/2} x||`.
    pub fn a_norm_vec(&self, x: &Vector) -> Result<f64> {
        self.check_dim(x.len())?;
        Ok(vnorm(&(&self.sqrt_a * x)))
    }

    /// Worst reconstruction error `||V diag(lambda) V^* - A|| / ||A||`.
    pub fn reconstruction_residual(&self) -> f64 {
        let d: Vec<C64> = self
            .range_eigvals()
            .iter()
            .map(|&v| C64::new(v, 0.0))
            .collect();
        let rebuilt = &self.range_basis
            * Mat::from_diagonal(&Vector::from_vec(d))
            * self.range_basis.adjoint();
        linalg::frobenius(&(rebuilt - self.a.as_mat())) / linalg::frobenius(self.a.as_mat())
    }
}

fn is_diagonal(m: &Mat) -> bool {
    let n = m.nrows();
    (0..n).all(|i| (0..n).all(|j| i == j || m[(i, j)] == C64::new(0.0, 0.0)))
}

/// Eigendecomposition of an exactly diagonal matrix: a stable sort of the
/// diagonal, so `A = I` keeps the identity basis bit for bit.
fn diagonal_eig(m: &Mat) -> (Vec<f64>, Mat) {
    let n = m.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| m[(b, b)].re.total_cmp(&m[(a, a)].re));
    let vals = order.iter().map(|&k| m[(k, k)].re).collect();
    let mut vecs = Mat::zeros(n, n);
    for (j, &k) in order.iter().enumerate() {
        vecs[(k, j)] = C64::new(1.0, 0.0);
    }
    (vals, vecs)
}

/// Relative residual `max_v ||A^{1/2} T v|| / (||A^{1/2}|| ||T||)` over an
/// orthonormal basis `v` of `N(A)`; zero when `A` is injective.
fn null_space_leak(t: &CMatrix, geom: &WeightGeometry) -> f64 {
    let nb = geom.null_basis();
    if nb.ncols() == 0 {
        return 0.0;
    }
    let scale = spectral_norm(geom.sqrt_a()) * t.op_norm();
    if scale == 0.0 {
        return 0.0;
    }
    let image = geom.sqrt_a() * t.as_mat() * nb;
    (0..image.ncols())
        .map(|k| image.column(k).norm())
        .fold(0.0, f64::max)
        / scale
}

/// Decides `T(N(A)) ⊆ N(A)`, which in finite dimension is equivalent to
/// `||Tx||_A <= c ||x||_A` for some `c`. Returns the decision and the
/// relative residual.
pub fn is_a_bounded(t: &CMatrix, geom: &WeightGeometry, tol: f64) -> Result<(bool, f64)> {
    geom.check_dim(t.dim())?;
    let residual = null_space_leak(t, geom);
    Ok((residual <= tol, residual))
}

/// Reduced solution of `Tm X = Um`: the unique solution whose range lies in
/// the closure of `R(Tm^*)`, i.e. `Tm^+ Um`.
///
/// Fails with [`Error::RangeNotIncluded`] when `R(Um)` is not contained in
/// `R(Tm)`, detected through the least-squares residual.
pub fn reduced_solution(tm: &CMatrix, um: &CMatrix, tol: f64) -> Result<Mat> {
    if tm.dim() != um.dim() {
        return Err(Error::DimMismatch {
            expected: tm.dim(),
            found: um.dim(),
        });
    }
    let q = linalg::pinv(tm.as_mat(), tol)?;
    let q = q * um.as_mat();
    check_solution(
        tm.as_mat(),
        &q,
        um.as_mat(),
        tol,
        linalg::frobenius(um.as_mat()),
    )?;
    Ok(q)
}

fn check_solution(tm: &Mat, q: &Mat, um: &Mat, tol: f64, scale: f64) -> Result<()> {
    let residual = linalg::frobenius(&(tm * q - um));
    let rel = residual / scale.max(f64::MIN_POSITIVE);
    if residual > 0.0 && rel > tol {
        return Err(Error::RangeNotIncluded { residual: rel });
    }
    Ok(())
}

/// An operator paired with a weight geometry.
#[derive(Debug, Clone)]
pub struct AOperator {
    t: CMatrix,
    geom: Arc<WeightGeometry>,
    bounded_residual: f64,
    bound_tol: f64,
}

impl AOperator {
    pub fn new(t: CMatrix, geom: Arc<WeightGeometry>) -> Result<Self> {
        Self::with_tol(t, geom, DEFAULT_BOUND_TOL)
    }

    pub fn with_tol(t: CMatrix, geom: Arc<WeightGeometry>, bound_tol: f64) -> Result<Self> {
        geom.check_dim(t.dim())?;
        let bounded_residual = null_space_leak(&t, &geom);
        Ok(Self {
            t,
            geom,
            bounded_residual,
            bound_tol,
        })
    }

    /// Convenience constructor building the geometry with default tolerances.
    pub fn from_matrices(t: &CMatrix, a: &CMatrix) -> Result<Self> {
        let geom = Arc::new(WeightGeometry::new(a, DEFAULT_RANK_TOL)?);
        Self::new(t.clone(), geom)
    }

    pub fn t(&self) -> &CMatrix {
        &self.t
    }

    pub fn geom(&self) -> &WeightGeometry {
        &self.geom
    }

    pub fn geom_arc(&self) -> &Arc<WeightGeometry> {
        &self.geom
    }

    pub fn bounded_residual(&self) -> f64 {
        self.bounded_residual
    }

    pub fn bound_tol(&self) -> f64 {
        self.bound_tol
    }

    pub fn is_bounded(&self) -> bool {
        self.bounded_residual <= self.bound_tol
    }

    pub fn require_bounded(&self) -> Result<()> {
        if self.is_bounded() {
            Ok(())
        } else {
            Err(Error::NotABounded {
                residual: self.bounded_residual,
            })
        }
    }

    /// Another operator on the same weight.
    pub fn sibling(&self, t: CMatrix) -> Result<Self> {
        Self::with_tol(t, self.geom.clone(), self.bound_tol)
    }

    /// `T + lambda I`.
    pub fn shifted(&self, lambda: C64) -> Result<Self> {
        self.sibling(self.t.shifted(lambda))
    }

    pub fn scaled(&self, s: C64) -> Result<Self> {
        self.sibling(self.t.scaled(s))
    }

    pub fn compose(&self, other: &AOperator) -> Result<Self> {
        self.sibling(self.t.mul(&other.t)?)
    }

    pub fn power(&self, k: usize) -> Result<Self> {
        let n = self.t.dim();
        let mut acc = Mat::identity(n, n);
        for _ in 0..k {
            acc = &acc * self.t.as_mat();
        }
        self.sibling(CMatrix::new(acc).map_err(|_| Error::Overflow { power: k })?)
    }

    /// Two witnesses for `||T||_A = 0`: the relative size of `A T A`, and of
    /// `A^{1/2} T (A^{1/2})^+`. Both vanish together for A-bounded `T`.
    pub fn null_seminorm_residuals(&self) -> (f64, f64) {
        let a = self.geom.a().as_mat();
        let t = self.t.as_mat();
        let tn = self.t.op_norm().max(f64::MIN_POSITIVE);
        let an = spectral_norm(a).max(f64::MIN_POSITIVE);
        let ata = spectral_norm(&(a * t * a)) / (an * an * tn);
        let s = self.geom.sqrt_a();
        let reduced = spectral_norm(&(s * t * self.geom.pinv_sqrt_a()))
            / (spectral_norm(s) * spectral_norm(self.geom.pinv_sqrt_a()) * tn);
        (ata, reduced)
    }
}

/// The A-adjoint `S = A^+ T^* A`, the reduced solution of `A X = T^* A`.
pub fn a_adjoint(op: &AOperator) -> Result<CMatrix> {
    op.require_bounded()?;
    let a = op.geom.a().as_mat();
    let rhs = op.t.as_mat().adjoint() * a;
    let s = op.geom.pinv_a() * &rhs;
    let tol = op.bound_tol.max(op.geom.rank_tol());
    // Relative to ||T|| ||A||: T^* A itself can be pure rounding noise.
    check_solution(
        a,
        &s,
        &rhs,
        tol,
        linalg::frobenius(op.t.as_mat()) * linalg::frobenius(a),
    )?;
    CMatrix::new(s)
}
