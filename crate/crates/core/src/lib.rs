//! Numerical ranges, maximal numerical ranges and centers of mass for
//! matrices acting on `C^n` with the semi-inner product `<x, y>_A = <Ax, y>`
//! of a positive semidefinite weight `A`.
//!
//! The weighted quantities are computed through the reduced operator `T^`,
//! an `r x r` matrix (`r = rank A`) that carries all of them:
//!
//! ```
//! use semihilbert::{AOperator, CMatrix, RangeConfig};
//!
//! let a = CMatrix::real_diag(&[1.0, 0.0]).unwrap();
//! let t = CMatrix::from_real_rows(&[vec![3.0, 0.0], vec![5.0, 7.0]]).unwrap();
//! let op = AOperator::from_matrices(&t, &a).unwrap();
//! let norm = semihilbert::reduction::a_op_seminorm(&op).unwrap();
//! assert!((norm - 3.0).abs() < 1e-12);
//! let verdict = semihilbert::ranges::normaloid_verdict(&op, 1e-7, &RangeConfig::default()).unwrap();
//! assert!(verdict.is_normaloid);
//! ```

pub mod error;
pub mod export;
pub mod geometry;
pub mod harness;
pub mod linalg;
pub mod matrix;
pub mod optim;
pub mod ranges;
pub mod reduction;
pub mod sampling;
pub mod variational;

pub use error::{Error, Result};
pub use geometry::{
    a_adjoint, build_geometry, is_a_bounded, reduced_solution, AOperator, WeightGeometry,
};
pub use matrix::{CMatrix, Mat, Vector, C64};
pub use ranges::{ConvexRegion, MaximalRange, NormaloidVerdict, RangeConfig};
pub use reduction::{reduce, ReducedOperator};
pub use variational::MassCenter;
