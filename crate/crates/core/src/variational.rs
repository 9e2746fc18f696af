//! Center of mass, distance to scalars and the identities relating them to
//! the maximal numerical range.
//!
//! Everything is computed on the reduced matrix `T^`, where
//! `||T - lambda||_A = sigma_max(T^ - lambda I)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::AOperator;
use crate::linalg;
use crate::matrix::{spectral_norm, vnorm, Mat, Vector, C64};
use crate::optim;
use crate::ranges::{self, MaximalRange, RangeConfig};
use crate::reduction;
use crate::sampling;

/// Relative tolerance for geometric tests (`tol * (1 + ||T||_A)`).
pub const DEFAULT_GEOM_TOL: f64 = 1e-7;
/// Relative tolerance for identities between squared quantities.
pub const DEFAULT_IDENTITY_TOL: f64 = 1e-6;

const FORMULA_RESTARTS: usize = 256;
const FORMULA_SEED: u64 = 0xD15_7A9CE;
const RING_ANGLES: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct MassCenter {
    /// The minimizer of `lambda -> ||T - lambda||_A`.
    pub c: C64,
    /// The minimum value.
    pub d: f64,
    /// Objective evaluations spent by the search.
    pub iterations: usize,
    /// Upper bound on `d - inf_lambda ||T - lambda||_A`.
    pub certified_gap: f64,
    /// `d^2` computed independently as a supremum over unit vectors.
    pub formula_d2: f64,
}

fn shifted(m: &Mat, lambda: C64) -> Mat {
    let mut out = m.clone();
    for k in 0..m.nrows() {
        out[(k, k)] -= lambda;
    }
    out
}

/// `g(lambda) = sigma_max(M - lambda I)`.
fn g(m: &Mat, lambda: C64) -> f64 {
    spectral_norm(&shifted(m, lambda))
}

/// A-center of mass and A-distance to scalars. `tol` is relative: the search
/// must certify a suboptimality gap below `tol * (1 + ||T||_A)`.
pub fn center_of_mass(op: &AOperator, tol: f64) -> Result<MassCenter> {
    let red = reduction::reduce(op)?;
    matrix_center_of_mass(red.mat(), tol)
}

/// [`center_of_mass`] for a plain matrix under the Euclidean inner product.
pub fn matrix_center_of_mass(m: &Mat, tol: f64) -> Result<MassCenter> {
    let r = m.nrows();
    let norm = spectral_norm(m);
    let formula_d2 = matrix_distance_formula(m)?;
    if r == 1 {
        return Ok(MassCenter {
            c: m[(0, 0)],
            d: 0.0,
            iterations: 0,
            certified_gap: 0.0,
            formula_d2,
        });
    }
    let scale = 1.0 + norm;
    let target = tol * scale;

    let trace_mean = m.trace() / C64::new(r as f64, 0.0);
    let centroid = ranges::numrange(m, 64)?.centroid();
    let starts = [trace_mean, centroid, C64::new(0.0, 0.0)];

    let mut evals = 0;
    let mut objective = |x: [f64; 2]| {
        evals += 1;
        g(m, C64::new(x[0], x[1]))
    };
    let mut best: Option<optim::SimplexMin> = None;
    for s in starts {
        let run = optim::nelder_mead_2d(
            &mut objective,
            [s.re, s.im],
            0.25 * scale,
            1e-13 * scale,
            4000,
        );
        if best.is_none_or(|b| run.value < b.value) {
            best = Some(run);
        }
    }
    let mut best = best.expect("at least one start");
    if let Some(x) = newton_polish(m, C64::new(best.x[0], best.x[1]), scale)? {
        let v = g(m, x);
        if v <= best.value + 8.0 * f64::EPSILON * scale {
            best.x = [x.re, x.im];
            best.value = v.min(best.value);
        }
    }

    let mut gap = f64::INFINITY;
    for round in 0..4 {
        let c = C64::new(best.x[0], best.x[1]);
        gap = certify(m, c, best.value, norm)?;
        if gap <= target || round == 3 {
            break;
        }
        let step = 1e-3 * scale * 0.1f64.powi(round);
        let run = optim::nelder_mead_2d(&mut objective, best.x, step, 1e-15 * scale, 4000);
        if run.value < best.value {
            best = run;
        }
    }
    let c = C64::new(best.x[0], best.x[1]);
    let mc = MassCenter {
        c,
        d: best.value,
        iterations: evals,
        certified_gap: gap,
        formula_d2,
    };
    if gap > target {
        return Err(Error::NoConvergence(Box::new(mc)));
    }
    Ok(mc)
}

/// Top singular pair of `x` through the Gram matrix: `(sigma_1, sigma_2, u, v)`.
/// Taking `u = x v / ||x v||` keeps `u^* v` accurate when it is tiny, which
/// the bidiagonal SVD does not.
fn top_pair(x: &Mat) -> Result<(f64, f64, Vector, Vector)> {
    let (vals, vecs) = linalg::hermitian_eig(&(x.adjoint() * x))?;
    let v = vecs.column(0).into_owned();
    let xv = x * &v;
    let s1 = vnorm(&xv);
    let s2 = vals.get(1).map_or(0.0, |e| e.max(0.0).sqrt());
    let u = if s1 > 0.0 {
        xv / C64::new(s1, 0.0)
    } else {
        v.clone()
    };
    Ok((s1, s2, u, v))
}

/// Gradient of `g` in `(Re lambda, Im lambda)` where the top singular value
/// is simple, `None` at a multiplicity point.
fn smooth_gradient(m: &Mat, lambda: C64, scale: f64) -> Result<Option<[f64; 2]>> {
    let (s1, s2, u, v) = top_pair(&shifted(m, lambda))?;
    if s1 - s2 < 1e-6 * scale {
        return Ok(None);
    }
    let w = u.dotc(&v);
    Ok(Some([-w.re, w.im]))
}

/// Newton iteration on `grad g = 0` with a central-difference Jacobian.
/// Where `g` is smooth its minimum is flat, so the simplex only pins the
/// minimizer down to about the square root of the rounding level.
fn newton_polish(m: &Mat, start: C64, scale: f64) -> Result<Option<C64>> {
    let h = 1e-6 * scale;
    let mut x = start;
    for _ in 0..8 {
        let Some(g0) = smooth_gradient(m, x, scale)? else {
            return Ok(None);
        };
        if g0[0].hypot(g0[1]) < 1e-15 {
            break;
        }
        let mut jac = [[0.0; 2]; 2];
        for (k, dir) in [C64::new(h, 0.0), C64::new(0.0, h)].into_iter().enumerate() {
            let (Some(gp), Some(gm)) = (
                smooth_gradient(m, x + dir, scale)?,
                smooth_gradient(m, x - dir, scale)?,
            ) else {
                return Ok(None);
            };
            jac[0][k] = (gp[0] - gm[0]) / (2.0 * h);
            jac[1][k] = (gp[1] - gm[1]) / (2.0 * h);
        }
        let det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
        if det.abs() < f64::EPSILON {
            return Ok(None);
        }
        let dx = (jac[1][1] * g0[0] - jac[0][1] * g0[1]) / det;
        let dy = (jac[0][0] * g0[1] - jac[1][0] * g0[0]) / det;
        x -= C64::new(dx, dy);
        if dx.hypot(dy) < 1e-15 * scale {
            break;
        }
    }
    Ok(Some(x))
}

/// Lower-bounds `inf g` through affine minorants. For a top singular pair
/// `(u, v)` of `M - mu`, `g(lambda) >= Re(u^* (M - lambda) v)` for every
/// `lambda`, so any convex combination of such minorants whose slopes nearly
/// cancel bounds `inf g` from below on the disk holding the minimizer.
fn certify(m: &Mat, c: C64, gc: f64, norm: f64) -> Result<f64> {
    let scale = 1.0 + norm;
    // Minimizer satisfies |lambda| <= 2 ||T||, so |lambda - c| <= reach.
    let reach = 2.0 * norm + c.norm();
    let mut points = vec![c];
    for k in 3..=9 {
        let rad = 10f64.powi(-k) * scale;
        for j in 0..RING_ANGLES {
            points.push(
                c + C64::from_polar(rad, std::f64::consts::TAU * j as f64 / RING_ANGLES as f64),
            );
        }
    }
    let mut slopes = Vec::with_capacity(points.len());
    let mut offsets = Vec::with_capacity(points.len());
    for &mu in &points {
        let (_, _, u, v) = top_pair(&shifted(m, mu))?;
        let w = u.dotc(&v);
        let a = u.dotc(&(m * &v)).re;
        // Minorant in the form b - Re((lambda - c) w).
        slopes.push(w);
        offsets.push(a - (c * w).re);
    }

    let n = points.len();
    let mut lower = f64::NEG_INFINITY;
    for i in 0..n {
        lower = lower.max(offsets[i] - reach * slopes[i].norm());
    }
    for i in 0..n {
        for j in i + 1..n {
            let d = slopes[i] - slopes[j];
            let dd = d.norm_sqr();
            if dd == 0.0 {
                continue;
            }
            let t = (-(slopes[j] * d.conj()).re / dd).clamp(0.0, 1.0);
            let s = slopes[i] * t + slopes[j] * (1.0 - t);
            lower = lower.max(t * offsets[i] + (1.0 - t) * offsets[j] - reach * s.norm());
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if let Some(nu) = barycentric_origin(slopes[i], slopes[j], slopes[k]) {
                    let s = slopes[i] * nu[0] + slopes[j] * nu[1] + slopes[k] * nu[2];
                    let b = nu[0] * offsets[i] + nu[1] * offsets[j] + nu[2] * offsets[k];
                    lower = lower.max(b - reach * s.norm());
                }
            }
        }
    }
    Ok((gc - lower).max(0.0))
}

/// Barycentric coordinates of the origin in the triangle `(p, q, r)`, if it
/// lies inside.
fn barycentric_origin(p: C64, q: C64, r: C64) -> Option<[f64; 3]> {
    let cross = |a: C64, b: C64| a.re * b.im - a.im * b.re;
    let area = cross(q - p, r - p);
    if area.abs() < f64::MIN_POSITIVE {
        return None;
    }
    let l1 = cross(q, r) / area;
    let l2 = cross(r, p) / area;
    let l3 = 1.0 - l1 - l2;
    (l1 >= 0.0 && l2 >= 0.0 && l3 >= 0.0).then_some([l1, l2, l3])
}

/// `sup { ||Tx||_A^2 - |<Tx, x>_A|^2 : ||x||_A = 1 }`, evaluated on unit
/// vectors of the range space. The returned value is attained by a
/// computed vector, so it is a lower bound on the supremum.
pub fn distance_formula(op: &AOperator) -> Result<f64> {
    matrix_distance_formula(reduction::reduce(op)?.mat())
}

fn formula_value(m: &Mat, y: &Vector) -> f64 {
    let my = m * y;
    my.norm_squared() - y.dotc(&my).norm_sqr()
}

/// Tangential ascent direction of `formula_value` at the unit vector `y`.
fn formula_gradient(m: &Mat, gram: &Mat, y: &Vector) -> Vector {
    let my = m * y;
    let z = y.dotc(&my);
    let grad = (gram * y - &my * z.conj() - m.adjoint() * y * z) * C64::new(2.0, 0.0);
    let radial = y.dotc(&grad).re;
    grad - y * C64::new(radial, 0.0)
}

fn ascend(m: &Mat, gram: &Mat, mut y: Vector, iters: usize, step0: f64) -> (f64, Vector) {
    let mut val = formula_value(m, &y);
    let mut step = step0;
    for _ in 0..iters {
        let dir = formula_gradient(m, gram, &y);
        if vnorm(&dir) * step < 1e-16 {
            break;
        }
        loop {
            let cand = &y + &dir * C64::new(step, 0.0);
            let cand = &cand / C64::new(vnorm(&cand), 0.0);
            let cv = formula_value(m, &cand);
            if cv > val {
                y = cand;
                val = cv;
                step *= 1.5;
                break;
            }
            step *= 0.5;
            if step * vnorm(&dir) < 1e-16 {
                return (val, y);
            }
        }
    }
    (val, y)
}

/// [`distance_formula`] for a plain matrix.
pub fn matrix_distance_formula(m: &Mat) -> Result<f64> {
    let r = m.nrows();
    if r == 1 {
        return Ok(0.0);
    }
    let gram = m.adjoint() * m;
    let norm2 = spectral_norm(&gram);
    if norm2 == 0.0 {
        return Ok(0.0);
    }
    let step0 = 0.25 / norm2;
    let (_, _, v) = linalg::svd(m)?;
    let mut starts: Vec<Vector> = (0..r).map(|k| v.column(k).into_owned()).collect();
    let mut rng = sampling::rng(FORMULA_SEED);
    for _ in 0..FORMULA_RESTARTS {
        starts.push(sampling::unit_vector(&mut rng, r));
    }
    // Short ascent from every start, then polish the best few.
    let mut coarse: Vec<(f64, Vector)> = starts
        .into_iter()
        .map(|y| ascend(m, &gram, y, 25, step0))
        .collect();
    coarse.sort_by(|a, b| b.0.total_cmp(&a.0));
    let best = coarse
        .into_iter()
        .take(8)
        .map(|(_, y)| ascend(m, &gram, y, 5000, step0).0)
        .fold(0.0, f64::max);
    Ok(best)
}

/// The three conditions whose equivalence characterizes `0 in W_max^A(T)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroInWmax {
    /// `m_max^A(T) <= tol`.
    pub in_wmax: bool,
    /// `||T||_A^2 + |lambda|^2 <= ||T + lambda||_A^2` for all scalars.
    pub pythagorean_bound: bool,
    /// `||T||_A <= ||T + lambda||_A` for all scalars.
    pub norm_bound: bool,
    pub m_max: f64,
    /// Minimum of `||T + lambda||_A^2 - ||T||_A^2 - |lambda|^2` found.
    pub pythagorean_slack: f64,
    /// Minimum of `||T + lambda||_A - ||T||_A` found.
    pub norm_slack: f64,
    pub pythagorean_witness: [f64; 2],
    pub norm_witness: [f64; 2],
    pub tol_linear: f64,
    pub tol_squared: f64,
}

pub fn zero_in_wmax_check(op: &AOperator, tol: f64, cfg: &RangeConfig) -> Result<ZeroInWmax> {
    let red = reduction::reduce(op)?;
    let mr = ranges::a_max_numrange(op, cfg)?;
    let m_max = if mr.degenerate {
        0.0
    } else {
        ranges::origin_distance(&mr.compression, cfg)?
    };
    Ok(zero_in_wmax_reduced(red.mat(), m_max, tol))
}

/// Minimizes `f` over the disk `|lambda| <= 2 ||T||`: an 8 x 8 polar grid,
/// then simplex searches from the origin and the three best grid points.
fn minimize_over_disk(f: &mut impl FnMut([f64; 2]) -> f64, norm: f64) -> ([f64; 2], f64) {
    let radius = 2.0 * norm;
    let mut cands: Vec<([f64; 2], f64)> = vec![([0.0, 0.0], f([0.0, 0.0]))];
    for i in 1..=8 {
        for j in 0..8 {
            let z = C64::from_polar(
                radius * i as f64 / 8.0,
                std::f64::consts::TAU * j as f64 / 8.0,
            );
            let x = [z.re, z.im];
            cands.push((x, f(x)));
        }
    }
    cands.sort_by(|a, b| a.1.total_cmp(&b.1));
    let mut best = cands[0];
    let mut seeds: Vec<[f64; 2]> = vec![[0.0, 0.0]];
    seeds.extend(cands.iter().take(3).map(|c| c.0));
    for s in seeds {
        let run = optim::nelder_mead_2d(f, s, radius / 16.0 + 1e-3, 1e-12 * (1.0 + norm), 3000);
        if run.value < best.1 {
            best = (run.x, run.value);
        }
    }
    best
}

pub(crate) fn zero_in_wmax_reduced(m: &Mat, m_max: f64, tol: f64) -> ZeroInWmax {
    let norm = spectral_norm(m);
    let tol_linear = tol * (1.0 + norm);
    let tol_squared = tol * (1.0 + norm * norm);

    let mut pyth = |x: [f64; 2]| {
        let lam = C64::new(x[0], x[1]);
        g(m, -lam).powi(2) - norm * norm - lam.norm_sqr()
    };
    let (pw, ps) = minimize_over_disk(&mut pyth, norm);
    let mut plain = |x: [f64; 2]| g(m, -C64::new(x[0], x[1])) - norm;
    let (nw, ns) = minimize_over_disk(&mut plain, norm);

    ZeroInWmax {
        in_wmax: m_max <= tol_linear,
        pythagorean_bound: ps >= -tol_squared,
        norm_bound: ns >= -tol_linear,
        m_max,
        pythagorean_slack: ps,
        norm_slack: ns,
        pythagorean_witness: pw,
        norm_witness: nw,
        tol_linear,
        tol_squared,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Pythagorean {
    /// `c_A(T)` lies in `W_max^A(T)` up to the geometric tolerance.
    pub in_wmax: bool,
    /// `d_A(T)^2 + |c_A(T)|^2 = ||T||_A^2` up to the identity tolerance.
    pub identity_holds: bool,
    /// Signed distance from `c_A(T)` to `W_max^A(T)` (positive outside).
    pub membership_slack: f64,
    /// `d^2 + |c|^2 - ||T||_A^2`.
    pub identity_residual: f64,
    pub tol_membership: f64,
    pub tol_identity: f64,
}

pub fn pythagorean_check(op: &AOperator, tol: f64, cfg: &RangeConfig) -> Result<Pythagorean> {
    let red = reduction::reduce(op)?;
    let mc = matrix_center_of_mass(red.mat(), DEFAULT_GEOM_TOL)?;
    let mr = ranges::a_max_numrange(op, cfg)?;
    pythagorean_reduced(red.mat(), &mc, &mr, tol, DEFAULT_IDENTITY_TOL, cfg)
}

pub(crate) fn pythagorean_reduced(
    m: &Mat,
    mc: &MassCenter,
    mr: &MaximalRange,
    geom_tol: f64,
    identity_tol: f64,
    cfg: &RangeConfig,
) -> Result<Pythagorean> {
    let norm = spectral_norm(m);
    let membership_slack = if mr.degenerate {
        mc.c.norm()
    } else {
        ranges::point_slack(&mr.compression, mc.c, cfg)?.value
    };
    let identity_residual = mc.d * mc.d + mc.c.norm_sqr() - norm * norm;
    let tol_membership = geom_tol * (1.0 + norm);
    let tol_identity = identity_tol * (1.0 + norm * norm);
    Ok(Pythagorean {
        in_wmax: membership_slack <= tol_membership,
        identity_holds: identity_residual.abs() <= tol_identity,
        membership_slack,
        identity_residual,
        tol_membership,
        tol_identity,
    })
}

/// One line of the inequality chain; `slack = rhs - lhs` (minimum over the
/// parts of a chained inequality).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityCheck {
    pub id: &'static str,
    pub statement: &'static str,
    pub applies: bool,
    pub slack: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityReport {
    pub checks: Vec<InequalityCheck>,
    pub tol_used: f64,
}

impl InequalityReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn get(&self, id: &str) -> Option<&InequalityCheck> {
        self.checks.iter().find(|c| c.id == id)
    }
}

/// The scalar invariants the inequality chain is stated in.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChainInputs {
    pub norm: f64,
    pub omega: f64,
    pub omega_max: f64,
    pub m_max: f64,
    pub c_abs: f64,
    pub d: f64,
}

pub fn inequality_suite(op: &AOperator, tol: f64, cfg: &RangeConfig) -> Result<InequalityReport> {
    let red = reduction::reduce(op)?;
    let m = red.mat();
    let mr = ranges::a_max_numrange(op, cfg)?;
    let mc = matrix_center_of_mass(m, DEFAULT_GEOM_TOL)?;
    let (omega_max, m_max) = if mr.degenerate {
        (0.0, 0.0)
    } else {
        (
            ranges::numerical_radius(&mr.compression, cfg)?.value,
            ranges::origin_distance(&mr.compression, cfg)?,
        )
    };
    let inputs = ChainInputs {
        norm: spectral_norm(m),
        omega: ranges::numerical_radius(m, cfg)?.value,
        omega_max,
        m_max,
        c_abs: mc.c.norm(),
        d: mc.d,
    };
    Ok(inequality_chain(&inputs, tol))
}

pub(crate) fn inequality_chain(v: &ChainInputs, tol: f64) -> InequalityReport {
    let t = tol * (1.0 + v.norm * v.norm);
    let d2 = v.d * v.d;
    let check = |id, statement, applies: bool, slack: f64| InequalityCheck {
        id,
        statement,
        applies,
        slack,
        holds: !applies || slack >= -t,
    };
    let checks = vec![
        check(
            "a",
            "||T||/2 <= w <= ||T||",
            true,
            (v.omega - 0.5 * v.norm).min(v.norm - v.omega),
        ),
        check(
            "b",
            "|c| <= m_max <= w_max <= ||T||",
            true,
            (v.m_max - v.c_abs)
                .min(v.omega_max - v.m_max)
                .min(v.norm - v.omega_max),
        ),
        check(
            "c",
            "||T||^2 <= d^2 + m_max^2 <= d^2 + w^2",
            true,
            (d2 + v.m_max * v.m_max - v.norm * v.norm).min(v.omega * v.omega - v.m_max * v.m_max),
        ),
        {
            let applies = v.c_abs > 10.0 * t;
            let slack = if applies {
                v.m_max + d2 / (2.0 * v.c_abs) - v.norm
            } else {
                0.0
            };
            check("d", "||T|| <= m_max + d^2 / (2|c|)", applies, slack)
        },
        {
            let applies = v.c_abs <= t;
            let slack = if applies { -(v.norm - v.d).abs() } else { 0.0 };
            check("e", "c = 0 implies ||T|| = d", applies, slack)
        },
    ];
    InequalityReport {
        checks,
        tol_used: t,
    }
}
