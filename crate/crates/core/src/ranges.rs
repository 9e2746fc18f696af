//! Numerical ranges, maximal numerical ranges and the radii built on them.
//!
//! Every convex set here is handled through its support function
//! `h(theta) = max { Re(e^{-i theta} z) : z in K }`. For the numerical range
//! of a matrix `M`, `h(theta)` is the top eigenvalue of the Hermitian part of
//! `e^{-i theta} M` and a top eigenvector `x` gives the boundary point
//! `x^* M x`. Radii, distances to the origin and boundary contacts are then
//! one-dimensional periodic optimizations over `theta`.
//!
//! The A-weighted versions run the same machinery on the reduced matrix
//! `T^` (see [`crate::reduction`]); the A-maximal numerical range is the
//! numerical range of the compression of `T^` to its top right singular
//! subspace.

use std::f64::consts::TAU;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::AOperator;
use crate::linalg;
use crate::matrix::{spectral_norm, Mat, C64};
use crate::optim::{self, PeriodicMax};
use crate::reduction::{self, ReducedOperator};

pub const DEFAULT_GRID: usize = 720;
pub const DEFAULT_REFINE: usize = 3;
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-8;

/// Sampling parameters shared by the angle sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, serde::Deserialize)]
pub struct RangeConfig {
    /// Number of angles in the uniform sweep.
    pub grid: usize,
    /// Grid local extrema refined by golden-section search.
    pub refine: usize,
    /// Relative gap defining the maximal singular subspace.
    pub cluster_tol: f64,
}

impl Default for RangeConfig {
    fn default() -> Self {
        Self {
            grid: DEFAULT_GRID,
            refine: DEFAULT_REFINE,
            cluster_tol: DEFAULT_CLUSTER_TOL,
        }
    }
}

/// Boundary sample of a compact convex subset of the complex plane.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvexRegion {
    pub angles: Vec<f64>,
    pub support: Vec<f64>,
    pub boundary_pts: Vec<C64>,
}

impl ConvexRegion {
    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    /// A singleton region `{z}` sampled on `k` angles.
    pub fn singleton(z: C64, k: usize) -> Self {
        let angles = grid_angles(k);
        let support = angles
            .iter()
            .map(|&t| (C64::from_polar(1.0, -t) * z).re)
            .collect();
        Self {
            boundary_pts: vec![z; k],
            angles,
            support,
        }
    }

    /// `theta,support,re,im` rows with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("theta,support,re,im\n");
        for k in 0..self.len() {
            let z = self.boundary_pts[k];
            out.push_str(&format!(
                "{},{},{},{}\n",
                self.angles[k], self.support[k], z.re, z.im
            ));
        }
        out
    }

    /// Largest `|Re(e^{-i theta_k} z_k) - h(theta_k)|`; zero up to rounding for
    /// a well-formed region.
    pub fn supporting_line_residual(&self) -> f64 {
        (0..self.len())
            .map(|k| {
                ((C64::from_polar(1.0, -self.angles[k]) * self.boundary_pts[k]).re
                    - self.support[k])
                    .abs()
            })
            .fold(0.0, f64::max)
    }

    /// `max_k |h_self(theta_k) - h_other(theta_k)|`, the Hausdorff distance
    /// between the two convex sets up to angular sampling. Both regions must
    /// share the angle grid.
    pub fn support_distance(&self, other: &ConvexRegion) -> f64 {
        assert_eq!(
            self.angles.len(),
            other.angles.len(),
            "regions sampled on different grids"
        );
        self.support
            .iter()
            .zip(&other.support)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn centroid(&self) -> C64 {
        let n = self.boundary_pts.len().max(1) as f64;
        self.boundary_pts.iter().sum::<C64>() / n
    }
}

fn grid_angles(k: usize) -> Vec<f64> {
    (0..k).map(|i| TAU * i as f64 / k as f64).collect()
}

/// Support function of the numerical range of `m` at angle `theta`.
pub fn support_value(m: &Mat, theta: f64) -> f64 {
    if m.nrows() == 1 {
        return (C64::from_polar(1.0, -theta) * m[(0, 0)]).re;
    }
    linalg::top_eigpair(&linalg::rotated_hermitian_part(m, theta))
        .map(|(v, _)| v)
        .unwrap_or(f64::NAN)
}

/// Support value and the boundary point `x^* M x` of a top eigenvector.
pub fn support_point(m: &Mat, theta: f64) -> Result<(f64, C64)> {
    let (val, x) = linalg::top_eigpair(&linalg::rotated_hermitian_part(m, theta))?;
    let z = x.dotc(&(m * &x));
    Ok((val, z))
}

fn checked(p: PeriodicMax) -> Result<PeriodicMax> {
    if p.value.is_nan() {
        Err(Error::EigFailure)
    } else {
        Ok(p)
    }
}

/// Support-function sweep of the numerical range `W(M)` on `k` equally
/// spaced angles.
pub fn numrange(m: &Mat, k: usize) -> Result<ConvexRegion> {
    if k < 8 {
        return Err(Error::BadGrid(k));
    }
    if m.nrows() != m.ncols() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    let angles = grid_angles(k);
    let mut support = Vec::with_capacity(k);
    let mut boundary_pts = Vec::with_capacity(k);
    for &t in &angles {
        let (h, z) = support_point(m, t)?;
        support.push(h);
        boundary_pts.push(z);
    }
    Ok(ConvexRegion {
        angles,
        support,
        boundary_pts,
    })
}

/// Numerical radius `w(M) = max_theta h(theta)` with the maximizing angle.
pub fn numerical_radius(m: &Mat, cfg: &RangeConfig) -> Result<PeriodicMax> {
    let (best, _) = optim::maximize_periodic(|t| support_value(m, t), cfg.grid, cfg.refine);
    let best = checked(best)?;
    Ok(PeriodicMax {
        theta: best.theta,
        value: best.value.max(0.0),
    })
}

/// Signed distance from `z` to `W(M)`: `max_theta (Re(e^{-i theta} z) - h(theta))`.
/// Positive outside the region (and then equal to the Euclidean distance),
/// non-positive inside.
pub fn point_slack(m: &Mat, z: C64, cfg: &RangeConfig) -> Result<PeriodicMax> {
    let (best, _) = optim::maximize_periodic(
        |t| (C64::from_polar(1.0, -t) * z).re - support_value(m, t),
        cfg.grid,
        cfg.refine,
    );
    checked(best)
}

/// Distance from the origin to `W(M)`; zero when the origin lies inside.
pub fn origin_distance(m: &Mat, cfg: &RangeConfig) -> Result<f64> {
    Ok(point_slack(m, C64::new(0.0, 0.0), cfg)?.value.max(0.0))
}

/// `min_theta (h_outer(theta) - h_inner(theta))` with the minimizing angle.
/// For `W(inner) ⊆ cl W(outer)` this is zero exactly when the two sets share a
/// supporting line, i.e. when `W(inner)` meets the boundary of `W(outer)`.
pub fn min_support_gap(outer: &Mat, inner: &Mat, cfg: &RangeConfig) -> Result<PeriodicMax> {
    let (best, _) = optim::maximize_periodic(
        |t| support_value(inner, t) - support_value(outer, t),
        cfg.grid,
        cfg.refine,
    );
    let best = checked(best)?;
    Ok(PeriodicMax {
        theta: best.theta,
        value: -best.value,
    })
}

/// Orthonormal basis of the right singular vectors of `m` whose singular
/// values are within a relative `cluster_tol` of the largest.
///
/// For `m = 0` every unit vector is maximizing and the full identity basis
/// is returned.
pub fn maximal_subspace(m: &Mat, cluster_tol: f64) -> Result<Mat> {
    let n = m.ncols();
    let (s, _, v) = linalg::svd(m)?;
    if s[0] == 0.0 {
        return Ok(Mat::identity(n, n));
    }
    let cutoff = s[0] * (1.0 - cluster_tol);
    let dim = s.iter().take_while(|&&x| x >= cutoff).count().max(1);
    Ok(v.columns(0, dim).into_owned())
}

/// Compression `X^* M X` of `m` to its maximal singular subspace; its
/// numerical range is the maximal numerical range of `m`.
pub fn max_compression(m: &Mat, cluster_tol: f64) -> Result<Mat> {
    let x = maximal_subspace(m, cluster_tol)?;
    Ok(x.adjoint() * m * x)
}

/// The A-maximal numerical range together with the data it was built from.
#[derive(Debug, Clone)]
pub struct MaximalRange {
    pub region: ConvexRegion,
    /// Compression of `T^` to its maximal singular subspace.
    pub compression: Mat,
    /// `X`: orthonormal basis of the maximal singular subspace of `T^`.
    pub subspace: Mat,
    /// `||T||_A` vanished; the region is `{0}`.
    pub degenerate: bool,
}

impl MaximalRange {
    pub fn subspace_dim(&self) -> usize {
        self.subspace.ncols()
    }
}

/// `W_A(T)`, sampled as the numerical range of `T^`.
pub fn a_numrange(op: &AOperator, k: usize) -> Result<ConvexRegion> {
    numrange(reduction::reduce(op)?.mat(), k)
}

/// `w_A(T) = w(T^)`.
pub fn a_numerical_radius(op: &AOperator, cfg: &RangeConfig) -> Result<f64> {
    Ok(numerical_radius(reduction::reduce(op)?.mat(), cfg)?.value)
}

/// `r_A(T)`: the spectral radius of `T^`, which is the limit of
/// `||T^n||_A^{1/n}`.
pub fn a_spectral_radius(op: &AOperator) -> Result<f64> {
    linalg::spectral_radius(reduction::reduce(op)?.mat())
}

/// `||T||_A` counts as zero when it is at rounding level relative to
/// `||T||` and the conditioning of the weight on its range.
fn is_degenerate_norm(red: &ReducedOperator, norm: f64, t_norm: f64) -> bool {
    let eig = red.geom().range_eigvals();
    let cond = (eig[0] / eig[eig.len() - 1]).sqrt();
    norm <= 64.0 * f64::EPSILON * cond * t_norm
}

fn max_range_from_reduced(
    red: &ReducedOperator,
    t_norm: f64,
    cfg: &RangeConfig,
) -> Result<MaximalRange> {
    let m = red.mat();
    let norm = spectral_norm(m);
    if is_degenerate_norm(red, norm, t_norm) {
        let r = m.nrows();
        return Ok(MaximalRange {
            region: ConvexRegion::singleton(C64::new(0.0, 0.0), cfg.grid.max(8)),
            compression: Mat::zeros(1, 1),
            subspace: Mat::identity(r, 1),
            degenerate: true,
        });
    }
    let subspace = maximal_subspace(m, cfg.cluster_tol)?;
    let compression = subspace.adjoint() * m * &subspace;
    Ok(MaximalRange {
        region: numrange(&compression, cfg.grid)?,
        compression,
        subspace,
        degenerate: false,
    })
}

/// `W_max^A(T) = W_max(T^)`, sampled on `cfg.grid` angles.
pub fn a_max_numrange(op: &AOperator, cfg: &RangeConfig) -> Result<MaximalRange> {
    max_range_from_reduced(&reduction::reduce(op)?, op.t().op_norm(), cfg)
}

/// `w_max^A(T)`: largest modulus over the A-maximal numerical range.
pub fn omega_max(op: &AOperator, cfg: &RangeConfig) -> Result<f64> {
    let mr = a_max_numrange(op, cfg)?;
    Ok(numerical_radius(&mr.compression, cfg)?.value)
}

/// `m_max^A(T)`: smallest modulus over the A-maximal numerical range.
pub fn m_max(op: &AOperator, cfg: &RangeConfig) -> Result<f64> {
    let mr = a_max_numrange(op, cfg)?;
    origin_distance(&mr.compression, cfg)
}

/// One of the six normaloid criteria. `holds` when `gap <= tol`; `clear` when
/// the gap is outside the ambiguous band `(tol, 10 tol)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Criterion {
    pub name: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
    pub holds: bool,
    pub clear: bool,
}

impl Criterion {
    fn new(name: &'static str, lhs: f64, rhs: f64, gap: f64, tol: f64) -> Self {
        Self {
            name,
            lhs,
            rhs,
            gap,
            holds: gap <= tol,
            clear: gap <= tol || gap >= 10.0 * tol,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormaloidVerdict {
    pub is_normaloid: bool,
    /// Clear criteria disagree, or none is clear.
    pub inconclusive: bool,
    pub criteria: Vec<Criterion>,
    pub tol_used: f64,
    /// Angle where `W_max^A` touches (or comes closest to) the boundary of `W_A`.
    pub contact_angle: f64,
}

impl NormaloidVerdict {
    pub fn criterion(&self, name: &str) -> Option<&Criterion> {
        self.criteria.iter().find(|c| c.name == name)
    }
}

pub const C1_SPECTRAL: &str = "spectral_radius_equals_norm";
pub const C2_POWERS: &str = "power_norms_multiplicative";
pub const C3_RADIUS: &str = "numerical_radius_equals_norm";
pub const C4_CIRCLE: &str = "circle_meets_closure";
pub const C5_BOUNDARY: &str = "wmax_meets_boundary";
pub const C6_OMEGA_MAX: &str = "omega_equals_omega_max";

/// The range-side invariants of one operator, computed once and shared by
/// the verdict and the verification reports.
#[derive(Debug, Clone)]
pub struct RangeFacts {
    pub norm: f64,
    pub spectral_radius: f64,
    /// `min_{2 <= n <= 5} ||T^n||_A^{1/n}`.
    pub worst_power_root: f64,
    pub omega: PeriodicMax,
    pub maximal: MaximalRange,
    pub omega_max: PeriodicMax,
    pub m_max: f64,
    /// `min_theta (h_W(theta) - h_Wmax(theta))` and its angle.
    pub contact: PeriodicMax,
}

pub fn range_facts(op: &AOperator, red: &ReducedOperator, cfg: &RangeConfig) -> Result<RangeFacts> {
    let m = red.mat();
    let norm = spectral_norm(m);
    // Powers of T^ rather than of T: A^{1/2} T^n = T^^n A^{1/2}, and the
    // full-space product drags rounding of size eps ||T||^n through the root.
    let mut acc = m.clone();
    let mut worst_power_root = f64::INFINITY;
    for k in 2..=5 {
        acc = &acc * m;
        worst_power_root = worst_power_root.min(spectral_norm(&acc).powf(1.0 / k as f64));
    }
    let maximal = max_range_from_reduced(red, op.t().op_norm(), cfg)?;
    let (omega_max, m_max, contact) = if maximal.degenerate {
        // W_max = {0} and the boundary of W_A = {0} is the origin itself.
        let zero = PeriodicMax {
            theta: 0.0,
            value: 0.0,
        };
        (
            zero,
            0.0,
            PeriodicMax {
                theta: 0.0,
                value: norm,
            },
        )
    } else {
        (
            numerical_radius(&maximal.compression, cfg)?,
            origin_distance(&maximal.compression, cfg)?,
            min_support_gap(m, &maximal.compression, cfg)?,
        )
    };
    Ok(RangeFacts {
        norm,
        spectral_radius: linalg::spectral_radius(m)?,
        worst_power_root,
        omega: numerical_radius(m, cfg)?,
        maximal,
        omega_max,
        m_max,
        contact,
    })
}

/// Decides A-normaloidness by six equivalent criteria. `tol` is relative:
/// the absolute tolerance is `tol * (1 + ||T||_A)`.
pub fn normaloid_verdict(op: &AOperator, tol: f64, cfg: &RangeConfig) -> Result<NormaloidVerdict> {
    let red = reduction::reduce(op)?;
    Ok(verdict_from_facts(&range_facts(op, &red, cfg)?, tol))
}

pub fn verdict_from_facts(f: &RangeFacts, tol: f64) -> NormaloidVerdict {
    let norm = f.norm;
    let abs_tol = tol * (1.0 + norm);
    let (r, root, omega, contact) = (
        f.spectral_radius,
        f.worst_power_root,
        f.omega.value,
        f.contact.value,
    );
    let criteria = vec![
        Criterion::new(C1_SPECTRAL, r, norm, (norm - r).abs(), abs_tol),
        Criterion::new(C2_POWERS, root, norm, (norm - root).abs(), abs_tol),
        Criterion::new(C3_RADIUS, omega, norm, (norm - omega).abs(), abs_tol),
        Criterion::new(C4_CIRCLE, omega, norm, (norm - omega).max(0.0), abs_tol),
        Criterion::new(C5_BOUNDARY, contact, 0.0, contact.max(0.0), abs_tol),
        Criterion::new(
            C6_OMEGA_MAX,
            omega,
            f.omega_max.value,
            (omega - f.omega_max.value).abs(),
            abs_tol,
        ),
    ];
    let clear: Vec<&Criterion> = criteria.iter().filter(|c| c.clear).collect();
    let yes = clear.iter().filter(|c| c.holds).count();
    let no = clear.len() - yes;
    NormaloidVerdict {
        is_normaloid: yes > no,
        inconclusive: clear.is_empty() || (yes > 0 && no > 0),
        criteria,
        tol_used: abs_tol,
        contact_angle: f.contact.theta,
    }
}
