//! W_A(T), its radius and the maximal numerical range for a few 2x2 cases.

use semihilbert::ranges::{self, RangeConfig};
use semihilbert::{AOperator, CMatrix, C64};

fn show(name: &str, t: CMatrix, a: CMatrix) -> semihilbert::Result<()> {
    let cfg = RangeConfig::default();
    let op = AOperator::from_matrices(&t, &a)?;
    let w = ranges::a_numrange(&op, 360)?;
    let mr = ranges::a_max_numrange(&op, &cfg)?;
    println!("{name}");
    println!(
        "  omega_A     {:.6}",
        ranges::a_numerical_radius(&op, &cfg)?
    );
    println!("  r_A         {:.6}", ranges::a_spectral_radius(&op)?);
    println!("  omega_max   {:.6}", ranges::omega_max(&op, &cfg)?);
    println!("  m_max       {:.6}", ranges::m_max(&op, &cfg)?);
    println!(
        "  W_A centroid {:.4}, W_max dim {}, degenerate {}",
        w.centroid(),
        mr.subspace_dim(),
        mr.degenerate
    );
    Ok(())
}

fn main() -> semihilbert::Result<()> {
    let i2 = CMatrix::identity(2);
    show(
        "shift",
        CMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]])?,
        i2.clone(),
    )?;
    show("diag(1, 0)", CMatrix::real_diag(&[1.0, 0.0])?, i2.clone())?;
    show(
        "diag(1, i)",
        CMatrix::diag(&[C64::new(1.0, 0.0), C64::new(0.0, 1.0)])?,
        i2,
    )?;
    show(
        "[[3,0],[5,7]] with A = diag(1,0)",
        CMatrix::from_real_rows(&[vec![3.0, 0.0], vec![5.0, 7.0]])?,
        CMatrix::real_diag(&[1.0, 0.0])?,
    )?;
    Ok(())
}
