use thiserror::Error;

use crate::variational::MassCenter;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix has a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is empty")]
    Empty,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimMismatch { expected: usize, found: usize },

    #[error("weight is not Hermitian (relative asymmetry {asymmetry:.3e})")]
    NotHermitian { asymmetry: f64 },

    #[error("weight is not positive semidefinite (eigenvalue {eigenvalue:.3e})")]
    NotPositive { eigenvalue: f64 },

    #[error("weight is the zero operator")]
    ZeroWeight,

    #[error("range inclusion fails: least-squares residual {residual:.3e}")]
    RangeNotIncluded { residual: f64 },

    #[error(
        "operator does not leave the null space of the weight invariant (residual {residual:.3e})"
    )]
    NotABounded { residual: f64 },

    #[error("eigenvalue or singular value iteration did not converge")]
    EigFailure,

    #[error("angle grid too coarse: {0} < 8")]
    BadGrid(usize),

    #[error("power {power} overflowed the floating point range")]
    Overflow { power: usize },

    #[error("center of mass search stopped with certified gap {:.3e}", .0.certified_gap)]
    NoConvergence(Box<MassCenter>),

    #[error("invalid instance spec: {0}")]
    BadSpec(String),

    #[error("invalid matrix file: {0}")]
    BadMatrixFile(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
