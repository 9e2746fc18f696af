//! The reduced operator carries every A-quantity of T.

use semihilbert::reduction::{a_op_seminorm, gelfand_estimate};
use semihilbert::{a_adjoint, is_a_bounded, reduce, AOperator, CMatrix};

fn main() -> semihilbert::Result<()> {
    let t = CMatrix::from_real_rows(&[vec![3.0, 0.0], vec![5.0, 7.0]])?;
    let a = CMatrix::real_diag(&[1.0, 0.0])?;
    let op = AOperator::from_matrices(&t, &a)?;

    let red = reduce(&op)?;
    println!("T^ = {}", red.mat());
    println!("intertwining residual {:.1e}", red.intertwine_residual());
    println!("||T||_A = {}", a_op_seminorm(&op)?);
    println!("||T^n||_A^(1/n), n = 1..5: {:?}", gelfand_estimate(&op, 5)?);
    println!("A-adjoint A^+ T^* A =\n{}", a_adjoint(&op)?.as_mat());

    let leaky = CMatrix::from_real_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]])?;
    let (ok, leak) = is_a_bounded(&leaky, op.geom(), 1e-10)?;
    println!("[[1,1],[0,1]] A-bounded: {ok} (null-space leak {leak:.3})");
    let err = reduce(&AOperator::from_matrices(&leaky, &a)?).unwrap_err();
    println!("reducing it: {err}");
    Ok(())
}
