//! Thin wrappers over the dense eigen/singular value solvers.

use nalgebra::linalg::{Schur, SymmetricEigen, SVD};

use crate::error::{Error, Result};
use crate::matrix::{Mat, Vector, C64};

const MAX_SWEEPS: usize = 100_000;

/// Eigendecomposition of a Hermitian matrix with eigenvalues sorted in
/// descending order; column `k` of the returned matrix pairs with value `k`.
pub fn hermitian_eig(h: &Mat) -> Result<(Vec<f64>, Mat)> {
    let n = h.nrows();
    let sym = (h + h.adjoint()) * C64::new(0.5, 0.0);
    let eig = SymmetricEigen::try_new(sym, f64::EPSILON, MAX_SWEEPS).ok_or(Error::EigFailure)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = Mat::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    Ok((values, vectors))
}

/// Largest eigenvalue of a Hermitian matrix and a unit eigenvector.
pub fn top_eigpair(h: &Mat) -> Result<(f64, Vector)> {
    if h.nrows() == 1 {
        return Ok((h[(0, 0)].re, Vector::from_element(1, C64::new(1.0, 0.0))));
    }
    let (vals, vecs) = hermitian_eig(h)?;
    Ok((vals[0], vecs.column(0).into_owned()))
}

pub fn singular_values(m: &Mat) -> Vec<f64> {
    match SVD::try_new(m.clone(), false, false, f64::EPSILON, MAX_SWEEPS) {
        Some(svd) => svd.singular_values.iter().copied().collect(),
        None => vec![f64::NAN],
    }
}

/// Thin SVD: singular values (descending), left vectors `U` and right
/// vectors `V` (as columns, not `V^*`).
///
/// Read off the Hermitian eigensystem of `[[0, M], [M^*, 0]]`, whose
/// eigenvalues are `+-sigma` with eigenvectors `(u, +-v) / sqrt 2`. The
/// complex bidiagonal SVD in nalgebra returns wrong singular vectors for some
/// rank-deficient inputs; the Hermitian solver does not.
pub fn svd(m: &Mat) -> Result<(Vec<f64>, Mat, Mat)> {
    let (r, c) = m.shape();
    let k = r.min(c);
    let mut h = Mat::zeros(r + c, r + c);
    h.view_mut((0, r), (r, c)).copy_from(m);
    h.view_mut((r, 0), (c, r)).copy_from(&m.adjoint());
    let (vals, vecs) = hermitian_eig(&h)?;
    let s = vals[..k].iter().map(|&x| x.max(0.0)).collect();
    let u = orthonormal_columns((0..k).map(|j| vecs.column(j).rows(0, r).into_owned()), r, k);
    let v = orthonormal_columns((0..k).map(|j| vecs.column(j).rows(r, c).into_owned()), c, k);
    Ok((s, u, v))
}

/// Gram-Schmidt over `cols` in order, replacing any column that is (nearly)
/// dependent on its predecessors by a fresh standard basis direction.
fn orthonormal_columns(cols: impl Iterator<Item = Vector>, n: usize, k: usize) -> Mat {
    let mut out: Vec<Vector> = Vec::with_capacity(k);
    let mut fallback = 0;
    let project = |x: &mut Vector, basis: &[Vector]| {
        for _ in 0..2 {
            for b in basis {
                let z = b.dotc(x);
                *x -= b * z;
            }
        }
    };
    for mut x in cols {
        let size = x.norm();
        project(&mut x, &out);
        let mut rest = x.norm();
        while rest <= 1e-6 * size.max(f64::MIN_POSITIVE) && fallback < n {
            x = Vector::from_fn(n, |i, _| {
                C64::new(if i == fallback { 1.0 } else { 0.0 }, 0.0)
            });
            fallback += 1;
            project(&mut x, &out);
            rest = x.norm();
        }
        out.push(x / C64::new(rest, 0.0));
    }
    Mat::from_columns(&out)
}

/// Top singular triple `(sigma, u, v)` with `M v = sigma u`.
pub fn top_singular(m: &Mat) -> Result<(f64, Vector, Vector)> {
    let (s, u, v) = svd(m)?;
    Ok((s[0], u.column(0).into_owned(), v.column(0).into_owned()))
}

pub fn eigenvalues(m: &Mat) -> Result<Vec<C64>> {
    if m.nrows() == 1 {
        return Ok(vec![m[(0, 0)]]);
    }
    let schur = Schur::try_new(m.clone(), f64::EPSILON, MAX_SWEEPS).ok_or(Error::EigFailure)?;
    let (_, t) = schur.unpack();
    Ok((0..t.nrows()).map(|k| t[(k, k)]).collect())
}

pub fn spectral_radius(m: &Mat) -> Result<f64> {
    Ok(eigenvalues(m)?.iter().map(|z| z.norm()).fold(0.0, f64::max))
}

/// Moore-Penrose pseudo-inverse through the SVD, dropping singular values
/// at or below `rel_tol * sigma_max`.
pub fn pinv(m: &Mat, rel_tol: f64) -> Result<Mat> {
    let (s, u, v) = svd(m)?;
    let cutoff = rel_tol * s.first().copied().unwrap_or(0.0);
    let mut out = Mat::zeros(m.ncols(), m.nrows());
    for (k, &sk) in s.iter().enumerate() {
        if sk > cutoff && sk > 0.0 {
            out += v.column(k) * u.column(k).adjoint() * C64::new(1.0 / sk, 0.0);
        }
    }
    Ok(out)
}

/// Hermitian part of `e^{-i theta} M`.
pub fn rotated_hermitian_part(m: &Mat, theta: f64) -> Mat {
    let phase = C64::from_polar(1.0, -theta);
    let rot = m * phase;
    (&rot + rot.adjoint()) * C64::new(0.5, 0.0)
}

pub fn frobenius(m: &Mat) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::c;

    #[test]
    fn svd_reconstructs_rank_deficient() {
        for seed in 0..400u64 {
            let mut rng = crate::sampling::rng(seed);
            let n = 1 + (seed % 6) as usize;
            let k = 1 + (seed / 6 % n as u64) as usize;
            let mut m = crate::sampling::gaussian_matrix(&mut rng, n, k)
                * crate::sampling::gaussian_matrix(&mut rng, k, n);
            if seed % 3 == 0 {
                for i in 0..n {
                    for j in 0..=i {
                        m[(i, j)] = c(0.0, 0.0);
                    }
                }
            }
            let (s, u, v) = svd(&m).unwrap();
            let d = Mat::from_diagonal(&nalgebra::DVector::from_iterator(
                n,
                s.iter().map(|&x| c(x, 0.0)),
            ));
            assert!(
                (&u * d * v.adjoint() - &m).norm() <= 1e-12 * (1.0 + m.norm()),
                "seed {seed}"
            );
            assert!((u.adjoint() * &u - Mat::identity(n, n)).norm() < 1e-12);
            assert!((v.adjoint() * &v - Mat::identity(n, n)).norm() < 1e-12);
            assert!(s.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn hermitian_eig_sorted_descending() {
        let h = Mat::from_row_slice(2, 2, &[c(2.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(2.0, 0.0)]);
        let (vals, vecs) = hermitian_eig(&h).unwrap();
        assert!((vals[0] - 3.0).abs() < 1e-14 && (vals[1] - 1.0).abs() < 1e-14);
        let r = &h * vecs.column(0) - vecs.column(0) * c(vals[0], 0.0);
        assert!(r.norm() < 1e-13);
    }

    #[test]
    fn pinv_of_rank_one() {
        let m = Mat::from_row_slice(2, 2, &[c(4.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let p = pinv(&m, 1e-12).unwrap();
        assert!((p[(0, 0)] - c(0.25, 0.0)).norm() < 1e-15);
        assert!(p[(1, 1)].norm() < 1e-15);
    }

    #[test]
    fn nilpotent_spectral_radius_is_zero() {
        let m = Mat::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert!(spectral_radius(&m).unwrap() < 1e-14);
    }
}
