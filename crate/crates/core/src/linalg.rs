//! Dense linear-algebra helpers shared by the estimators.

use alloc::vec::Vec;
use libm::{fabs, log, sqrt};
use nalgebra::{DMatrix, DVector, Schur};

use crate::error::{Error, Result};

/// Least-squares coefficients of `y` on `x` (columns of `x` are regressors).
///
/// Uses a column-scaled QR factorization; a relative pivot below `1e-10`
/// is treated as exact collinearity.
pub fn ols(x: &DMatrix<f64>, y: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let q = x.ncols();
    if q == 0 {
        return Ok(DMatrix::zeros(0, y.ncols()));
    }
    if x.nrows() < q {
        return Err(Error::SingularRegressors);
    }
    let scales: Vec<f64> = x.column_iter().map(|c| c.norm()).collect();
    if scales.iter().any(|s| *s == 0.0 || !s.is_finite()) {
        return Err(Error::SingularRegressors);
    }
    let mut xs = x.clone();
    for (j, s) in scales.iter().enumerate() {
        xs.column_mut(j).unscale_mut(*s);
    }
    let qr = xs.qr();
    let r = qr.r();
    let rmax = (0..q).map(|i| fabs(r[(i, i)])).fold(0.0, f64::max);
    if (0..q).any(|i| fabs(r[(i, i)]) <= 1e-10 * rmax) {
        return Err(Error::SingularRegressors);
    }
    let qty = qr.q().tr_mul(y);
    let mut coef = r
        .solve_upper_triangular(&qty)
        .ok_or(Error::SingularRegressors)?;
    for (j, s) in scales.iter().enumerate() {
        coef.row_mut(j).unscale_mut(*s);
    }
    Ok(coef)
}

/// Residuals of `y` after projection on the columns of `x`.
pub fn residualize(y: &DMatrix<f64>, x: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    if x.ncols() == 0 {
        return Ok(y.clone());
    }
    let coef = ols(x, y)?;
    Ok(y - x * coef)
}

/// Product moment `a'b / T`.
pub fn moment(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    a.tr_mul(b) / a.nrows() as f64
}

pub fn symmetrize(m: &DMatrix<f64>) -> DMatrix<f64> {
    (m + m.transpose()) * 0.5
}

/// Inverse of a symmetric positive definite matrix.
pub fn spd_inverse(m: &DMatrix<f64>, what: &'static str) -> Result<DMatrix<f64>> {
    if m.nrows() == 0 {
        return Ok(DMatrix::zeros(0, 0));
    }
    let chol = symmetrize(m)
        .cholesky()
        .ok_or(Error::NotPositiveDefinite(what))?;
    Ok(symmetrize(&chol.inverse()))
}

/// `ln det` of a symmetric positive definite matrix.
pub fn log_det_spd(m: &DMatrix<f64>, what: &'static str) -> Result<f64> {
    let chol = symmetrize(m)
        .cholesky()
        .ok_or(Error::NotPositiveDefinite(what))?;
    let l = chol.l();
    Ok(2.0 * (0..l.nrows()).map(|i| log(l[(i, i)])).sum::<f64>())
}

/// General inverse with a relative singularity check based on singular values.
pub fn inverse(m: &DMatrix<f64>, what: &'static str) -> Result<DMatrix<f64>> {
    if m.nrows() != m.ncols() {
        return Err(Error::DimensionMismatch(alloc::format!(
            "{what} is {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    if m.nrows() == 0 {
        return Ok(DMatrix::zeros(0, 0));
    }
    if relative_min_singular(m) < 1e-13 {
        return Err(Error::SingularMatrix(what));
    }
    m.clone().try_inverse().ok_or(Error::SingularMatrix(what))
}

/// Smallest singular value divided by the largest (0 for a zero matrix).
pub fn relative_min_singular(m: &DMatrix<f64>) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 1.0;
    }
    let sv = m.clone().svd(false, false).singular_values;
    let max = sv.iter().copied().fold(0.0, f64::max);
    if max == 0.0 {
        return 0.0;
    }
    sv.iter().copied().fold(f64::INFINITY, f64::min) / max
}

/// Numerical rank with singular values below `tol * largest` treated as zero.
pub fn rank(m: &DMatrix<f64>, tol: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let sv = m.clone().svd(false, false).singular_values;
    let max = sv.iter().copied().fold(0.0, f64::max);
    if max == 0.0 {
        return 0;
    }
    sv.iter().filter(|s| **s > tol * max).count()
}

/// Orthonormal basis of the orthogonal complement of the column space of `m`.
///
/// `m` must have full column rank. Returns an `n x (n - r)` matrix.
pub fn orth_complement(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let n = m.nrows();
    let r = m.ncols();
    if r == 0 {
        return Ok(DMatrix::identity(n, n));
    }
    if r >= n {
        return Ok(DMatrix::zeros(n, 0));
    }
    let gram_inv = inverse(&m.tr_mul(m), "m'm")?;
    let proj = DMatrix::identity(n, n) - m * gram_inv * m.transpose();
    let eig = symmetrize(&proj).symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|a, b| eig.eigenvalues[*b].total_cmp(&eig.eigenvalues[*a]));
    let cols: Vec<DVector<f64>> = order[..n - r]
        .iter()
        .map(|&j| eig.eigenvectors.column(j).into_owned())
        .collect();
    Ok(DMatrix::from_columns(&cols))
}

/// Eigenvalue moduli of a general square matrix, sorted descending.
pub fn eigen_moduli(m: &DMatrix<f64>) -> Result<Vec<f64>> {
    if m.nrows() == 0 {
        return Ok(Vec::new());
    }
    let schur = Schur::try_new(m.clone(), 1e-14, 100_000).ok_or(Error::EigenFailure)?;
    let mut out: Vec<f64> = schur
        .complex_eigenvalues()
        .iter()
        .map(|z| sqrt(z.re * z.re + z.im * z.im))
        .collect();
    out.sort_by(|a, b| b.total_cmp(a));
    Ok(out)
}

pub fn spectral_radius(m: &DMatrix<f64>) -> Result<f64> {
    Ok(eigen_moduli(m)?.first().copied().unwrap_or(0.0))
}

pub fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0, |acc, v| f64::max(acc, fabs(*v)))
}

/// Lower Cholesky factor, with a `1e-12 * trace` ridge as a fallback.
pub fn cholesky_lower(m: &DMatrix<f64>, what: &'static str) -> Result<DMatrix<f64>> {
    let s = symmetrize(m);
    if let Some(c) = s.clone().cholesky() {
        return Ok(c.l());
    }
    let n = s.nrows();
    let ridge = 1e-12 * s.trace();
    if ridge > 0.0 {
        if let Some(c) = (s + DMatrix::identity(n, n) * ridge).cholesky() {
            return Ok(c.l());
        }
    }
    Err(Error::NotPositiveDefinite(what))
}

/// Horizontal concatenation of blocks with equal row counts.
pub fn hstack(blocks: &[&DMatrix<f64>], rows: usize) -> DMatrix<f64> {
    let cols: usize = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = DMatrix::zeros(rows, cols);
    let mut c = 0;
    for b in blocks {
        debug_assert_eq!(b.nrows(), rows);
        out.view_mut((0, c), (rows, b.ncols())).copy_from(*b);
        c += b.ncols();
    }
    out
}

/// Vertical concatenation of blocks with equal column counts.
pub fn vstack(blocks: &[&DMatrix<f64>], cols: usize) -> DMatrix<f64> {
    let rows: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = DMatrix::zeros(rows, cols);
    let mut r = 0;
    for b in blocks {
        debug_assert_eq!(b.ncols(), cols);
        out.view_mut((r, 0), (b.nrows(), cols)).copy_from(*b);
        r += b.nrows();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ols_recovers_exact_map() {
        let x = DMatrix::from_fn(20, 2, |i, j| if j == 0 { 1.0 } else { i as f64 });
        let y = DMatrix::from_fn(20, 1, |i, _| 1.0 + 2.0 * i as f64);
        let b = ols(&x, &y).unwrap();
        assert!((b[(0, 0)] - 1.0).abs() < 1e-12);
        assert!((b[(1, 0)] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn ols_detects_collinearity() {
        let x = DMatrix::from_fn(10, 2, |i, _| i as f64 + 1.0);
        let y = DMatrix::from_element(10, 1, 1.0);
        assert_eq!(ols(&x, &y), Err(Error::SingularRegressors));
    }

    #[test]
    fn complement_is_orthonormal_and_orthogonal() {
        let m = DMatrix::from_row_slice(3, 1, &[1.0, -1.0, 2.0]);
        let p = orth_complement(&m).unwrap();
        assert_eq!(p.shape(), (3, 2));
        assert!(max_abs(&(m.tr_mul(&p))) < 1e-12);
        assert!(max_abs(&(p.tr_mul(&p) - DMatrix::identity(2, 2))) < 1e-12);
    }

    #[test]
    fn moduli_of_rotation() {
        let m = DMatrix::from_row_slice(2, 2, &[0.0, -0.5, 0.5, 0.0]);
        let e = eigen_moduli(&m).unwrap();
        assert!((e[0] - 0.5).abs() < 1e-12 && (e[1] - 0.5).abs() < 1e-12);
    }
}
