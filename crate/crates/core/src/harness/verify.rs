//! Per-instance verification: every registered theorem is evaluated once and
//! recorded with a three-valued verdict, a slack and a witness.
//!
//! Verdicts use an ambiguity band. A condition compared against tolerance
//! `tol` is decided when its gap is at most `tol` (holds) or at least
//! `10 tol` (fails); anything in between leaves the verdict inconclusive.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::Result;
use crate::geometry::{AOperator, WeightGeometry, DEFAULT_BOUND_TOL, DEFAULT_RANK_TOL};
use crate::harness::generate::{generate, InstanceSpec};
use crate::linalg;
use crate::matrix::{CMatrix, Mat, C64};
use crate::ranges::{
    self, Criterion, RangeConfig, RangeFacts, DEFAULT_CLUSTER_TOL, DEFAULT_GRID, DEFAULT_REFINE,
};
use crate::reduction::{self, ReducedOperator};
use crate::sampling;
use crate::variational::{self, ChainInputs, MassCenter, DEFAULT_GEOM_TOL, DEFAULT_IDENTITY_TOL};

pub const THEOREM_IDS: [&str; 17] = [
    "normaloid_criteria_agree",
    "gamma_closure_characterization",
    "gamma_wmax_equals_gamma_closure",
    "normaloid_iff_wmax_meets_boundary",
    "normaloid_iff_omega_equals_omega_max",
    "wmax_reduction_transfer",
    "wmax_convex_containment",
    "wmax_inside_closure",
    "zero_in_wmax_three_way",
    "distance_formula",
    "pythagorean_relation",
    "center_zero_iff_zero_in_wmax",
    "ineq_a",
    "ineq_b",
    "ineq_c",
    "ineq_d",
    "ineq_e",
];

const CONTAINMENT_SAMPLES: usize = 64;
const CONTAINMENT_POWER_STEPS: usize = 40;
const CONTAINMENT_SEED: u64 = 0xC0_4E7A;
const TRANSFER_ANGLES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Relative tolerance for geometric membership tests.
    pub geom: f64,
    /// Relative tolerance for identities between squared quantities.
    pub identity: f64,
    pub bound: f64,
    pub rank: f64,
    pub cluster: f64,
    pub grid: usize,
    pub refine: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            geom: DEFAULT_GEOM_TOL,
            identity: DEFAULT_IDENTITY_TOL,
            bound: DEFAULT_BOUND_TOL,
            rank: DEFAULT_RANK_TOL,
            cluster: DEFAULT_CLUSTER_TOL,
            grid: DEFAULT_GRID,
            refine: DEFAULT_REFINE,
        }
    }
}

impl Tolerances {
    pub fn range_config(&self) -> RangeConfig {
        RangeConfig {
            grid: self.grid,
            refine: self.refine,
            cluster_tol: self.cluster,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    fn worst(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Pass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremResult {
    pub id: &'static str,
    pub verdict: Verdict,
    /// Distance of the closest deciding quantity from its threshold; for
    /// inequalities, `rhs - lhs`.
    pub slack: f64,
    pub witness: Value,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

impl Counts {
    pub fn add(&mut self, v: Verdict) {
        match v {
            Verdict::Pass => self.pass += 1,
            Verdict::Fail => self.fail += 1,
            Verdict::Inconclusive => self.inconclusive += 1,
        }
    }

    pub fn merge(&mut self, other: &Counts) {
        self.pass += other.pass;
        self.fail += other.fail;
        self.inconclusive += other.inconclusive;
    }

    pub fn total(&self) -> usize {
        self.pass + self.fail + self.inconclusive
    }
}

/// The maximal range recomputed with a hundredfold cluster tolerance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClusterSensitivity {
    pub cluster_tol: f64,
    pub wmax_dim: usize,
    pub omega_max: f64,
    pub m_max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub instance: Option<InstanceSpec>,
    pub dim: usize,
    pub rank: usize,
    pub norm_a: f64,
    pub omega_a: f64,
    pub r_a: f64,
    pub omega_max: f64,
    pub m_max: f64,
    pub c_re: f64,
    pub c_im: f64,
    pub d: f64,
    pub formula_d2: f64,
    pub gap: f64,
    pub normaloid: bool,
    pub normaloid_inconclusive: bool,
    pub normaloid_criteria: Vec<Criterion>,
    pub wmax_dim: usize,
    pub degenerate: bool,
    pub cluster_sensitivity: ClusterSensitivity,
    pub theorems: Vec<TheoremResult>,
    pub summary: Counts,
}

impl VerificationReport {
    pub fn theorem(&self, id: &str) -> Option<&TheoremResult> {
        self.theorems.iter().find(|t| t.id == id)
    }

    pub fn failing(&self) -> Vec<&'static str> {
        self.theorems
            .iter()
            .filter(|t| t.verdict == Verdict::Fail)
            .map(|t| t.id)
            .collect()
    }

    pub fn inconclusive(&self) -> Vec<&'static str> {
        self.theorems
            .iter()
            .filter(|t| t.verdict == Verdict::Inconclusive)
            .map(|t| t.id)
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// A condition of the form `gap <= tol`.
#[derive(Debug, Clone, Copy)]
struct Decision {
    holds: bool,
    clear: bool,
    /// A clear negative that is also large enough to contradict a positive.
    firm: bool,
    margin: f64,
}

impl Decision {
    fn at_most(gap: f64, tol: f64) -> Self {
        if gap.is_nan() {
            return Self {
                holds: false,
                clear: false,
                firm: false,
                margin: f64::NAN,
            };
        }
        let holds = gap <= tol;
        let clear = holds || gap >= 10.0 * tol;
        Self {
            holds,
            clear,
            firm: clear && !holds,
            margin: (gap - tol).abs(),
        }
    }

    /// A linear gap compared against conditions that vanish quadratically in
    /// it: a negative answer only contradicts a positive one once `gap^2` also
    /// clears `10 tol_sq`.
    fn linear(gap: f64, tol: f64, tol_sq: f64) -> Self {
        let mut d = Self::at_most(gap, tol);
        d.firm &= gap * gap >= 10.0 * tol_sq;
        d
    }
}

/// Biconditional among conditions. A clear positive next to a firm negative
/// fails; unanimous clear decisions pass; anything else is inconclusive.
fn equivalence(ds: &[Decision]) -> (Verdict, f64) {
    let slack = ds.iter().map(|d| d.margin).fold(f64::INFINITY, f64::min);
    let some_yes = ds.iter().any(|d| d.holds && d.clear);
    let verdict = if some_yes && ds.iter().any(|d| d.firm) {
        Verdict::Fail
    } else if ds.iter().all(|d| d.clear && d.holds == ds[0].holds) {
        Verdict::Pass
    } else {
        Verdict::Inconclusive
    };
    (verdict, slack)
}

/// One-sided check: `violation <= tol` passes, `>= 10 tol` fails.
fn bounded(violation: f64, tol: f64) -> Verdict {
    if violation.is_nan() || violation >= 10.0 * tol {
        Verdict::Fail
    } else if violation <= tol {
        Verdict::Pass
    } else {
        Verdict::Inconclusive
    }
}

fn cjson(z: C64) -> Value {
    json!([z.re, z.im])
}

/// Generates the instance for `spec` and verifies it.
pub fn verify_spec(spec: &InstanceSpec, tols: &Tolerances) -> Result<VerificationReport> {
    let (t, a) = generate(spec)?;
    let mut report = verify_instance(&t, &a, tols)?;
    report.instance = Some(*spec);
    Ok(report)
}

pub fn verify_instance(t: &CMatrix, a: &CMatrix, tols: &Tolerances) -> Result<VerificationReport> {
    let geom = Arc::new(WeightGeometry::new(a, tols.rank)?);
    let op = AOperator::with_tol(t.clone(), geom, tols.bound)?;
    let red = reduction::reduce(&op)?;
    let cfg = tols.range_config();
    let facts = ranges::range_facts(&op, &red, &cfg)?;
    let mc = variational::matrix_center_of_mass(red.mat(), tols.geom)?;
    Checker {
        op: &op,
        red: &red,
        facts: &facts,
        mc: &mc,
        tols,
        cfg,
    }
    .report()
}

struct Checker<'a> {
    op: &'a AOperator,
    red: &'a ReducedOperator,
    facts: &'a RangeFacts,
    mc: &'a MassCenter,
    tols: &'a Tolerances,
    cfg: RangeConfig,
}

impl Checker<'_> {
    fn norm(&self) -> f64 {
        self.facts.norm
    }

    fn tol_linear(&self) -> f64 {
        self.tols.geom * (1.0 + self.norm())
    }

    fn tol_squared(&self) -> f64 {
        self.tols.identity * (1.0 + self.norm() * self.norm())
    }

    fn report(&self) -> Result<VerificationReport> {
        let f = self.facts;
        let verdict = ranges::verdict_from_facts(f, self.tols.geom);
        let crit = |name: &str| {
            let c = verdict.criterion(name).expect("criterion present");
            Decision::linear(c.gap, verdict.tol_used, self.tol_squared())
        };
        let c1 = crit(ranges::C1_SPECTRAL);

        let mut theorems = Vec::with_capacity(THEOREM_IDS.len());
        let mut push = |id: &'static str, (verdict, slack): (Verdict, f64), witness: Value| {
            theorems.push(TheoremResult {
                id,
                verdict,
                slack,
                witness,
            });
        };

        push(
            THEOREM_IDS[0],
            equivalence(&[
                c1,
                crit(ranges::C2_POWERS),
                crit(ranges::C3_RADIUS),
                crit(ranges::C6_OMEGA_MAX),
            ]),
            json!({
                "spectral_radius": f.spectral_radius,
                "worst_power_root": f.worst_power_root,
                "omega": f.omega.value,
                "omega_max": f.omega_max.value,
            }),
        );

        let m = self.red.mat();
        let (_, circle_point) = ranges::support_point(m, f.omega.theta)?;
        push(
            THEOREM_IDS[1],
            equivalence(&[c1, crit(ranges::C4_CIRCLE)]),
            json!({ "theta": f.omega.theta, "closure_point": cjson(circle_point) }),
        );

        push(
            THEOREM_IDS[2],
            self.gamma_sets(crit(ranges::C4_CIRCLE), circle_point)?,
            json!({
                "theta": f.omega.theta,
                "closure_point": cjson(circle_point),
                "omega_max": f.omega_max.value,
            }),
        );

        push(
            THEOREM_IDS[3],
            equivalence(&[c1, crit(ranges::C5_BOUNDARY)]),
            json!({ "contact_theta": f.contact.theta, "support_gap": f.contact.value }),
        );

        push(
            THEOREM_IDS[4],
            equivalence(&[c1, crit(ranges::C6_OMEGA_MAX)]),
            json!({ "omega": f.omega.value, "omega_max": f.omega_max.value, "theta": f.omega_max.theta }),
        );

        let (v, w) = self.transfer()?;
        push(THEOREM_IDS[5], v, w);
        let (v, w) = self.containment()?;
        push(THEOREM_IDS[6], v, w);

        let inside = -f.contact.value;
        push(
            THEOREM_IDS[7],
            (bounded(inside, self.tol_linear()), -inside),
            json!({ "theta": f.contact.theta }),
        );

        let z = variational::zero_in_wmax_reduced(m, f.m_max, self.tols.geom);
        push(
            THEOREM_IDS[8],
            equivalence(&[
                Decision::linear(z.m_max, z.tol_linear, z.tol_squared),
                Decision::at_most(-z.pythagorean_slack, z.tol_squared),
                Decision::linear(-z.norm_slack, z.tol_linear, z.tol_squared),
            ]),
            json!({
                "m_max": z.m_max,
                "pythagorean_slack": z.pythagorean_slack,
                "pythagorean_lambda": z.pythagorean_witness,
                "norm_slack": z.norm_slack,
                "norm_lambda": z.norm_witness,
            }),
        );

        let d2 = self.mc.d * self.mc.d;
        let residual = (d2 - self.mc.formula_d2).abs();
        push(
            THEOREM_IDS[9],
            (
                bounded(residual, self.tol_squared()),
                self.tol_squared() - residual,
            ),
            json!({ "d2": d2, "formula_d2": self.mc.formula_d2 }),
        );

        let p = variational::pythagorean_reduced(
            m,
            self.mc,
            &f.maximal,
            self.tols.geom,
            self.tols.identity,
            &self.cfg,
        )?;
        push(
            THEOREM_IDS[10],
            equivalence(&[
                Decision::linear(p.membership_slack, p.tol_membership, p.tol_identity),
                Decision::at_most(p.identity_residual.abs(), p.tol_identity),
            ]),
            json!({ "membership_slack": p.membership_slack, "identity_residual": p.identity_residual }),
        );

        push(
            THEOREM_IDS[11],
            equivalence(&[
                Decision::linear(f.m_max, self.tol_linear(), self.tol_squared()),
                Decision::linear(self.mc.c.norm(), self.tol_linear(), self.tol_squared()),
            ]),
            json!({ "m_max": f.m_max, "c": cjson(self.mc.c) }),
        );

        let chain = variational::inequality_chain(
            &ChainInputs {
                norm: f.norm,
                omega: f.omega.value,
                omega_max: f.omega_max.value,
                m_max: f.m_max,
                c_abs: self.mc.c.norm(),
                d: self.mc.d,
            },
            self.tols.geom,
        );
        for (k, check) in chain.checks.iter().enumerate() {
            let v = if check.applies {
                bounded(-check.slack, chain.tol_used)
            } else {
                Verdict::Pass
            };
            push(
                THEOREM_IDS[12 + k],
                (v, check.slack),
                json!({ "applies": check.applies, "statement": check.statement }),
            );
        }

        let mut summary = Counts::default();
        for t in &theorems {
            summary.add(t.verdict);
        }
        Ok(VerificationReport {
            instance: None,
            dim: self.op.t().dim(),
            rank: self.red.rank(),
            norm_a: f.norm,
            omega_a: f.omega.value,
            r_a: f.spectral_radius,
            omega_max: f.omega_max.value,
            m_max: f.m_max,
            c_re: self.mc.c.re,
            c_im: self.mc.c.im,
            d: self.mc.d,
            formula_d2: self.mc.formula_d2,
            gap: self.mc.certified_gap,
            normaloid: verdict.is_normaloid,
            normaloid_inconclusive: verdict.inconclusive,
            normaloid_criteria: verdict.criteria.clone(),
            wmax_dim: f.maximal.subspace_dim(),
            degenerate: f.maximal.degenerate,
            cluster_sensitivity: self.cluster_sensitivity()?,
            theorems,
            summary,
        })
    }

    /// `Gamma ∩ cl W` and `Gamma ∩ W_max` are empty together, and a point of
    /// the first lies in the second.
    fn gamma_sets(&self, closure_meets: Decision, point: C64) -> Result<(Verdict, f64)> {
        let f = self.facts;
        let tol = self.tol_linear();
        let wmax_meets = Decision::linear(
            (f.norm - f.omega_max.value).max(0.0),
            tol,
            self.tol_squared(),
        );
        let (mut verdict, slack) = equivalence(&[closure_meets, wmax_meets]);
        if closure_meets.holds {
            let inside = ranges::point_slack(&f.maximal.compression, point, &self.cfg)?.value;
            verdict = verdict.worst(bounded(inside, tol));
        }
        Ok((verdict, slack))
    }

    /// Boundary points of `W(B)` lifted back to `C^n` are realized as
    /// A-quantities of `T` by A-unit vectors attaining `||T||_A`.
    fn transfer(&self) -> Result<((Verdict, f64), Value)> {
        let mr = &self.facts.maximal;
        let geom = self.op.geom();
        let t = self.op.t().as_mat();
        let norm = self.norm();
        let mut worst: f64 = 0.0;
        let mut worst_theta = 0.0;
        for k in 0..TRANSFER_ANGLES {
            let theta = std::f64::consts::TAU * k as f64 / TRANSFER_ANGLES as f64;
            let (_, y) =
                linalg::top_eigpair(&linalg::rotated_hermitian_part(&mr.compression, theta))?;
            let z = y.dotc(&(&mr.compression * &y));
            let x = self.red.lift(&(&mr.subspace * &y));
            let tx = t * &x;
            let err = ((geom.a_norm_vec(&x)? - 1.0).abs() * norm)
                .max((geom.a_norm_vec(&tx)? - norm).abs())
                .max((geom.a_inner(&tx, &x)? - z).norm());
            if err > worst {
                worst = err;
                worst_theta = theta;
            }
        }
        let tol = self.tol_linear();
        Ok((
            (bounded(worst, tol), tol - worst),
            json!({ "max_residual": worst, "theta": worst_theta }),
        ))
    }

    /// Values `<Tx, x>_A` at near-maximizing A-unit vectors fall within a
    /// certified distance of `W_max^A`.
    fn containment(&self) -> Result<((Verdict, f64), Value)> {
        let f = self.facts;
        let mr = &f.maximal;
        let geom = self.op.geom();
        let t = self.op.t().as_mat();
        let tsharp = geom.pinv_a() * t.adjoint() * geom.a().as_mat();
        let polish = &tsharp * t;
        let n = t.nrows();
        let norm = f.norm;

        let s = linalg::singular_values(self.red.mat());
        let next = s.get(mr.subspace_dim()).copied().unwrap_or(0.0);
        let spread = norm * norm - next * next;

        let mut rng = sampling::rng(CONTAINMENT_SEED);
        let mut kept = 0usize;
        let mut worst = f64::NEG_INFINITY;
        let mut worst_point = C64::new(0.0, 0.0);
        for _ in 0..CONTAINMENT_SAMPLES {
            let mut x = sampling::gaussian_vector(&mut rng, n);
            let mut nx = geom.a_norm_vec(&x)?;
            for _ in 0..CONTAINMENT_POWER_STEPS {
                if nx == 0.0 {
                    break;
                }
                x = &polish * (x / C64::new(nx, 0.0));
                nx = geom.a_norm_vec(&x)?;
            }
            if nx == 0.0 || !nx.is_finite() {
                continue;
            }
            let x = x / C64::new(nx, 0.0);
            let tx = t * &x;
            let ratio = geom.a_norm_vec(&tx)?;
            if ratio < (1.0 - 1e-4) * norm {
                continue;
            }
            kept += 1;
            let z = geom.a_inner(&tx, &x)?;
            let eps = if spread > 0.0 {
                ((norm * norm - ratio * ratio).max(0.0) / spread).sqrt()
            } else {
                0.0
            };
            let allowed = 2.0 * eps * (1.0 + eps) * norm;
            let outside = grid_point_slack(&mr.region, z) - allowed;
            if outside > worst {
                worst = outside;
                worst_point = z;
            }
        }
        let tol = self.tol_linear();
        let worst = if kept == 0 { f64::NEG_INFINITY } else { worst };
        let verdict = if kept == 0 {
            Verdict::Pass
        } else {
            bounded(worst, tol)
        };
        Ok((
            (verdict, tol - worst.max(-tol)),
            json!({ "kept": kept, "worst_excess": worst.max(-1e300), "worst_point": cjson(worst_point) }),
        ))
    }

    fn cluster_sensitivity(&self) -> Result<ClusterSensitivity> {
        let cluster_tol = self.cfg.cluster_tol * 100.0;
        let cfg = RangeConfig {
            cluster_tol,
            ..self.cfg
        };
        let m = self.red.mat();
        if self.facts.maximal.degenerate {
            return Ok(ClusterSensitivity {
                cluster_tol,
                wmax_dim: 1,
                omega_max: 0.0,
                m_max: 0.0,
            });
        }
        let x = ranges::maximal_subspace(m, cluster_tol)?;
        let b: Mat = x.adjoint() * m * &x;
        Ok(ClusterSensitivity {
            cluster_tol,
            wmax_dim: x.ncols(),
            omega_max: ranges::numerical_radius(&b, &cfg)?.value,
            m_max: ranges::origin_distance(&b, &cfg)?,
        })
    }
}

/// Signed distance from `z` to a region, from its sampled support values.
fn grid_point_slack(region: &ranges::ConvexRegion, z: C64) -> f64 {
    region
        .angles
        .iter()
        .zip(&region.support)
        .map(|(&t, &h)| (C64::from_polar(1.0, -t) * z).re - h)
        .fold(f64::NEG_INFINITY, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::matrix::c;

    fn all_pass(r: &VerificationReport) -> bool {
        r.theorems.iter().all(|t| t.verdict == Verdict::Pass)
    }

    #[test]
    fn registry_is_complete_and_ordered() {
        let r = verify_instance(
            &CMatrix::real_diag(&[2.0, 1.0]).unwrap(),
            &CMatrix::identity(2),
            &Tolerances::default(),
        )
        .unwrap();
        let ids: Vec<&str> = r.theorems.iter().map(|t| t.id).collect();
        assert_eq!(ids, THEOREM_IDS.to_vec());
    }

    #[test]
    fn shift_passes_and_is_not_normaloid() {
        let t = CMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        let r = verify_instance(&t, &CMatrix::identity(2), &Tolerances::default()).unwrap();
        assert!(all_pass(&r), "{}", r.to_json());
        assert!(!r.normaloid && !r.normaloid_inconclusive);
        assert!(r.m_max < 1e-12 && (r.d - 1.0).abs() < 1e-12);
    }

    #[test]
    fn diag_1_i_passes_and_is_normaloid() {
        let t = CMatrix::diag(&[c(1.0, 0.0), c(0.0, 1.0)]).unwrap();
        let r = verify_instance(&t, &CMatrix::identity(2), &Tolerances::default()).unwrap();
        assert!(all_pass(&r), "{}", r.to_json());
        assert!(r.normaloid && !r.normaloid_inconclusive);
        assert_eq!(r.wmax_dim, 2);
    }

    #[test]
    fn unbounded_rejected_up_front() {
        let a = CMatrix::real_diag(&[1.0, 0.0]).unwrap();
        let t = CMatrix::from_real_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
        assert!(matches!(
            verify_instance(&t, &a, &Tolerances::default()),
            Err(Error::NotABounded { .. })
        ));
    }

    #[test]
    fn report_is_deterministic() {
        let spec = InstanceSpec::new(
            4,
            crate::harness::generate::WeightKind::RankDeficient(2),
            crate::harness::generate::OperatorKind::DenseRandom,
            11,
        );
        let a = verify_spec(&spec, &Tolerances::default())
            .unwrap()
            .to_json();
        let b = verify_spec(&spec, &Tolerances::default())
            .unwrap()
            .to_json();
        assert_eq!(a, b);
        for key in [
            "norm_a",
            "omega_a",
            "r_a",
            "omega_max",
            "m_max",
            "c_re",
            "c_im",
            "d",
            "formula_d2",
            "normaloid",
            "theorems",
        ] {
            assert!(a.contains(&format!("\"{key}\"")), "{key}");
        }
    }

    #[test]
    fn verdict_rules() {
        assert_eq!(bounded(0.5, 1.0), Verdict::Pass);
        assert_eq!(bounded(5.0, 1.0), Verdict::Inconclusive);
        assert_eq!(bounded(10.0, 1.0), Verdict::Fail);
        let yes = Decision::at_most(0.0, 1.0);
        let no = Decision::at_most(20.0, 1.0);
        let maybe = Decision::at_most(3.0, 1.0);
        assert_eq!(equivalence(&[yes, yes]).0, Verdict::Pass);
        assert_eq!(equivalence(&[no, no]).0, Verdict::Pass);
        assert_eq!(equivalence(&[yes, no]).0, Verdict::Fail);
        assert_eq!(equivalence(&[yes, maybe]).0, Verdict::Inconclusive);
        assert_eq!(equivalence(&[no, maybe]).0, Verdict::Inconclusive);
        let soft_no = Decision::linear(20.0, 1.0, 100.0);
        assert!(soft_no.clear && !soft_no.firm);
        assert_eq!(equivalence(&[yes, soft_no]).0, Verdict::Inconclusive);
        assert_eq!(equivalence(&[no, soft_no]).0, Verdict::Pass);
        assert_eq!(
            equivalence(&[yes, Decision::linear(40.0, 1.0, 100.0)]).0,
            Verdict::Fail
        );
    }
}
