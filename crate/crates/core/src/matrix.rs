//! Dense complex square matrices and the JSON matrix file format.
//!
//! The on-disk format is a JSON object with row-major real and imaginary
//! parts:
//!
//! ```json
//! {"dim": 2, "re": [[0.0, 1.0], [0.0, 0.0]], "im": [[0.0, 0.0], [0.0, 0.0]]}
//! ```

use std::fs;
use std::path::Path;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type Mat = DMatrix<C64>;
pub type Vector = DVector<C64>;

/// A validated dense `n x n` complex matrix with finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix(Mat);

impl CMatrix {
    pub fn new(m: Mat) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::NotSquare {
                rows: m.nrows(),
                cols: m.ncols(),
            });
        }
        if m.nrows() == 0 {
            return Err(Error::Empty);
        }
        for col in 0..m.ncols() {
            for row in 0..m.nrows() {
                let z = m[(row, col)];
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFinite { row, col });
                }
            }
        }
        Ok(Self(m))
    }

    /// Builds a matrix from rows of complex entries.
    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::NotSquare {
                rows: n,
                cols: bad.len(),
            });
        }
        Self::new(Mat::from_fn(n, n, |i, j| rows[i][j]))
    }

    /// Builds a matrix from rows of real entries.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let rows: Vec<Vec<C64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn identity(n: usize) -> Self {
        Self(Mat::identity(n, n))
    }

    pub fn diag(entries: &[C64]) -> Result<Self> {
        Self::new(Mat::from_diagonal(&Vector::from_column_slice(entries)))
    }

    pub fn real_diag(entries: &[f64]) -> Result<Self> {
        let e: Vec<C64> = entries.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::diag(&e)
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn as_mat(&self) -> &Mat {
        &self.0
    }

    pub fn into_mat(self) -> Mat {
        self.0
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    /// Spectral norm (largest singular value).
    pub fn op_norm(&self) -> f64 {
        spectral_norm(&self.0)
    }

    pub fn scaled(&self, s: C64) -> Self {
        Self(&self.0 * s)
    }

    /// `self + shift * I`.
    pub fn shifted(&self, shift: C64) -> Self {
        let n = self.dim();
        Self(&self.0 + Mat::identity(n, n) * shift)
    }

    pub fn mul(&self, other: &CMatrix) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Self::new(&self.0 * &other.0)
    }

    pub fn to_file_format(&self) -> MatrixFile {
        let n = self.dim();
        MatrixFile {
            dim: n,
            re: (0..n)
                .map(|i| (0..n).map(|j| self.0[(i, j)].re).collect())
                .collect(),
            im: (0..n)
                .map(|i| (0..n).map(|j| self.0[(i, j)].im).collect())
                .collect(),
        }
    }

    pub fn from_file_format(f: &MatrixFile) -> Result<Self> {
        let n = f.dim;
        let bad = |what: &str| Error::BadMatrixFile(format!("{what} does not match dim {n}"));
        if f.re.len() != n || f.re.iter().any(|r| r.len() != n) {
            return Err(bad("re"));
        }
        // A missing imaginary part means a real matrix.
        if !f.im.is_empty() && (f.im.len() != n || f.im.iter().any(|r| r.len() != n)) {
            return Err(bad("im"));
        }
        let m = Mat::from_fn(n, n, |i, j| {
            C64::new(f.re[i][j], if f.im.is_empty() { 0.0 } else { f.im[i][j] })
        });
        Self::new(m)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let f: MatrixFile = serde_json::from_str(s)?;
        Self::from_file_format(&f)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_file_format()).expect("matrix file serializes")
    }

    pub fn read_json(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json_str(&fs::read_to_string(path)?)
    }

    pub fn write_json(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_json_string())?;
        Ok(())
    }
}

impl From<CMatrix> for Mat {
    fn from(m: CMatrix) -> Self {
        m.0
    }
}

/// Serialized form of [`CMatrix`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    #[serde(default)]
    pub im: Vec<Vec<f64>>,
}

impl Serialize for CMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_file_format().serialize(s)
    }
}

impl<'de> Deserialize<'de> for CMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let f = MatrixFile::deserialize(d)?;
        CMatrix::from_file_format(&f).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
pub(crate) fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Largest singular value of an arbitrary (possibly rectangular) matrix.
pub fn spectral_norm(m: &Mat) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    crate::linalg::singular_values(m)
        .first()
        .copied()
        .unwrap_or(0.0)
}

/// Euclidean norm of a complex vector.
pub fn vnorm(v: &Vector) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Standard inner product `<x, y> = y^* x`, linear in the first slot.
pub fn inner(x: &Vector, y: &Vector) -> C64 {
    x.iter().zip(y.iter()).map(|(a, b)| a * b.conj()).sum()
}
