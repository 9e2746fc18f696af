//! Square root, pseudo-inverse and seminorm of a singular weight.

use semihilbert::{build_geometry, CMatrix, Vector, C64};

fn main() -> semihilbert::Result<()> {
    let a = CMatrix::real_diag(&[4.0, 0.0])?;
    let g = build_geometry(&a, 1e-10)?;
    println!("rank {} of {}", g.rank(), g.dim());
    println!("sqrt(A) =\n{}", g.sqrt_a());
    println!("sqrt(A)^+ =\n{}", g.pinv_sqrt_a());

    let x = Vector::from_vec(vec![C64::new(1.0, 0.0), C64::new(1.0, 0.0)]);
    let null = Vector::from_vec(vec![C64::new(0.0, 0.0), C64::new(7.0, 0.0)]);
    println!("||(1, 1)||_A = {}", g.a_norm_vec(&x)?);
    println!("||(0, 7)||_A = {}", g.a_norm_vec(&null)?);
    println!(
        "reconstruction residual {:.1e}",
        g.reconstruction_residual()
    );
    Ok(())
}
