use alloc::vec::Vec;
use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg;

/// Solution of `det(lambda S11 - S10 S00^{-1} S01) = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct RrrSolution {
    /// Descending, in `[0, 1)`; one per column of `R1`.
    pub eigenvalues: DVector<f64>,
    /// Columns normalized so that `V' S11 V = I`.
    pub eigenvectors: DMatrix<f64>,
    pub s00: DMatrix<f64>,
    pub s01: DMatrix<f64>,
    pub s11: DMatrix<f64>,
}

/// Reduced-rank regression of `R0` on `R1` through the Cholesky-whitened
/// symmetric eigenproblem.
pub fn rrr_solve(r0: &DMatrix<f64>, r1: &DMatrix<f64>) -> Result<RrrSolution> {
    if r0.nrows() != r1.nrows() {
        return Err(Error::DimensionMismatch("R0 and R1 row counts differ".into()));
    }
    let s00 = linalg::moment(r0, r0);
    let s01 = linalg::moment(r0, r1);
    let s11 = linalg::moment(r1, r1);
    let s00_inv = linalg::spd_inverse(&s00, "S00")?;
    let l = linalg::cholesky_lower(&s11, "S11")?;
    let w = l
        .solve_lower_triangular(&s01.transpose())
        .ok_or(Error::NotPositiveDefinite("S11"))?;
    let a = linalg::symmetrize(&(&w * &s00_inv * w.transpose()));
    let eig = a.symmetric_eigen();
    let m = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|x, y| eig.eigenvalues[*y].total_cmp(&eig.eigenvalues[*x]));
    let eigenvalues = DVector::from_iterator(m, order.iter().map(|&j| eig.eigenvalues[j].max(0.0)));
    if eigenvalues.iter().any(|v| *v >= 1.0 - 1e-10) {
        return Err(Error::DegenerateCorrelation);
    }
    let u = DMatrix::from_columns(
        &order.iter().map(|&j| eig.eigenvectors.column(j).into_owned()).collect::<Vec<_>>(),
    );
    let eigenvectors = l
        .transpose()
        .solve_upper_triangular(&u)
        .ok_or(Error::NotPositiveDefinite("S11"))?;
    Ok(RrrSolution { eigenvalues, eigenvectors, s00, s01, s11 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, StandardNormal};

    fn noise(t: usize, n: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
        DMatrix::from_fn(t, n, |_, _| StandardNormal.sample(rng))
    }

    #[test]
    fn independent_noise_has_small_correlations() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let r0 = noise(10_000, 2, &mut rng);
        let r1 = noise(10_000, 2, &mut rng);
        let sol = rrr_solve(&r0, &r1).unwrap();
        assert!(sol.eigenvalues.iter().all(|v| *v < 0.01));
    }

    #[test]
    fn perfect_correlation_is_degenerate() {
        let r = DMatrix::from_column_slice(4, 1, &[1.0, -2.0, 0.5, 3.0]);
        assert_eq!(rrr_solve(&r, &r), Err(Error::DegenerateCorrelation));
    }

    #[test]
    fn scalar_closed_form() {
        let r0 = DMatrix::from_column_slice(3, 1, &[1.0, 2.0, -1.0]);
        let r1 = DMatrix::from_column_slice(3, 1, &[2.0, 1.0, 1.0]);
        // S00 = 6/3, S11 = 6/3, S01 = 3/3.
        let expected = (1.0f64 * 1.0) / (2.0 * 2.0);
        let sol = rrr_solve(&r0, &r1).unwrap();
        assert!((sol.eigenvalues[0] - expected).abs() < 1e-15);
    }

    #[test]
    fn eigenvectors_are_s11_orthonormal() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let r1 = noise(300, 3, &mut rng);
        let r0 = &r1.columns(0, 2) * 0.3 + noise(300, 2, &mut rng);
        let sol = rrr_solve(&r0, &r1).unwrap();
        let g = sol.eigenvectors.transpose() * &sol.s11 * &sol.eigenvectors;
        assert!((g - DMatrix::identity(3, 3)).abs().max() < 1e-10);
        for w in sol.eigenvalues.as_slice().windows(2) {
            assert!(w[0] >= w[1]);
        }
    }
}
