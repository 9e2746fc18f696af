//! Six criteria for A-normaloidness, side by side.

use semihilbert::ranges::{normaloid_verdict, RangeConfig};
use semihilbert::{AOperator, CMatrix, C64};

fn main() -> semihilbert::Result<()> {
    let cases = [
        (
            "shift",
            CMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]])?,
            CMatrix::identity(2),
        ),
        (
            "diag(1, i)",
            CMatrix::diag(&[C64::new(1.0, 0.0), C64::new(0.0, 1.0)])?,
            CMatrix::identity(2),
        ),
        (
            "shift, A = [[2,1],[1,2]]",
            CMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]])?,
            CMatrix::from_real_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]])?,
        ),
    ];
    for (name, t, a) in cases {
        let op = AOperator::from_matrices(&t, &a)?;
        let v = normaloid_verdict(&op, 1e-7, &RangeConfig::default())?;
        println!(
            "{name}: normaloid = {} (inconclusive = {})",
            v.is_normaloid, v.inconclusive
        );
        for c in &v.criteria {
            println!("  {:32} gap {:9.2e}  holds {}", c.name, c.gap, c.holds);
        }
    }
    Ok(())
}
