//! A-center of mass, the distance formula and the Pythagorean relation.

use semihilbert::ranges::RangeConfig;
use semihilbert::variational::{
    center_of_mass, distance_formula, inequality_suite, pythagorean_check,
};
use semihilbert::{AOperator, CMatrix, C64};

fn main() -> semihilbert::Result<()> {
    let cfg = RangeConfig::default();
    let cases = [
        ("diag(1, 0)", CMatrix::real_diag(&[1.0, 0.0])?),
        (
            "diag(1, i)",
            CMatrix::diag(&[C64::new(1.0, 0.0), C64::new(0.0, 1.0)])?,
        ),
        (
            "shift",
            CMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]])?,
        ),
    ];
    for (name, t) in cases {
        let op = AOperator::from_matrices(&t, &CMatrix::identity(2))?;
        let mc = center_of_mass(&op, 1e-7)?;
        let p = pythagorean_check(&op, 1e-7, &cfg)?;
        println!(
            "{name}: c = {:.6}, d = {:.6}, gap <= {:.1e}",
            mc.c, mc.d, mc.certified_gap
        );
        println!(
            "  d^2 = {:.8}, sup formula = {:.8}",
            mc.d * mc.d,
            distance_formula(&op)?
        );
        println!(
            "  c in W_max: {}, ||T||^2 = d^2 + |c|^2: {}",
            p.in_wmax, p.identity_holds
        );
        let ineq = inequality_suite(&op, 1e-7, &cfg)?;
        for chk in ineq.checks.iter().filter(|c| c.applies) {
            println!(
                "  {} holds={} slack {:.2e}: {}",
                chk.id, chk.holds, chk.slack, chk.statement
            );
        }
    }
    Ok(())
}
