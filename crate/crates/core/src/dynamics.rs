//! Levels-form recursion of a fitted error-correction model, shared by the
//! bootstrap, counterfactual and forecast code.

use alloc::vec::Vec;
use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::Result;
use crate::estimator::CvarEstimate;
use crate::linalg;

/// `X_t = sum_i A_i X_{t-i} + alpha beta_det' D_r(t) + Phi D_u(t)
///        + sum_l Psi_l df_{t-l} + eps_t`.
#[derive(Debug, Clone)]
pub struct Dynamics<'a> {
    est: &'a CvarEstimate,
    levels: Vec<DMatrix<f64>>,
    restricted_loading: DMatrix<f64>,
}

impl<'a> Dynamics<'a> {
    pub fn new(est: &'a CvarEstimate) -> Self {
        Self {
            est,
            levels: est.levels_matrices(),
            restricted_loading: &est.alpha * est.beta_det().transpose(),
        }
    }

    pub fn estimate(&self) -> &CvarEstimate {
        self.est
    }

    /// Conditional mean of the state at `row` given `hist[..row]`.
    ///
    /// `exog` holds the exogenous levels for every row of the timeline.
    pub fn conditional_mean(
        &self,
        hist: &[DVector<f64>],
        row: usize,
        year: i32,
        exog: &DMatrix<f64>,
    ) -> DVector<f64> {
        let est = self.est;
        let mut m = DVector::zeros(est.n());
        for (i, a) in self.levels.iter().enumerate() {
            m += a * &hist[row - 1 - i];
        }
        let det = &est.spec.deterministic;
        if self.restricted_loading.ncols() > 0 {
            let dr = DVector::from_vec(det.restricted_at(year, est.origin));
            m += &self.restricted_loading * dr;
        }
        if est.det_coef.ncols() > 0 {
            let du = DVector::from_vec(det.unrestricted_at(year, est.origin));
            m += &est.det_coef * du;
        }
        if est.exog_coef.ncols() > 0 {
            let p = exog.ncols();
            for (li, &l) in est.spec.exog_lags.iter().enumerate() {
                let d = (exog.row(row - l) - exog.row(row - l - 1)).transpose();
                m += est.exog_coef.columns(li * p, p) * d;
            }
        }
        m
    }

    /// Runs the recursion from row `start`, keeping rows before it from `init`.
    pub fn simulate(
        &self,
        init: &DMatrix<f64>,
        years: &[i32],
        exog: &DMatrix<f64>,
        start: usize,
        mut shock: impl FnMut(usize) -> DVector<f64>,
    ) -> DMatrix<f64> {
        let t = years.len();
        let n = self.est.n();
        let mut hist: Vec<DVector<f64>> = Vec::with_capacity(t);
        for i in 0..start {
            hist.push(init.row(i).transpose());
        }
        for row in start..t {
            let x = self.conditional_mean(&hist, row, years[row], exog) + shock(row);
            hist.push(x);
        }
        DMatrix::from_fn(t, n, |i, j| hist[i][j])
    }
}

/// Gaussian shock generator with covariance `omega`.
#[derive(Debug, Clone)]
pub struct GaussianShocks {
    chol: DMatrix<f64>,
}

impl GaussianShocks {
    pub fn new(omega: &DMatrix<f64>) -> Result<Self> {
        Ok(Self { chol: linalg::cholesky_lower(omega, "Omega")? })
    }

    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> DVector<f64> {
        let z = DVector::from_fn(self.chol.nrows(), |_, _| StandardNormal.sample(rng));
        &self.chol * z
    }
}

/// Residual rows resampled with replacement.
#[derive(Debug, Clone)]
pub struct ResidualPool {
    rows: Vec<DVector<f64>>,
}

impl ResidualPool {
    /// Pool of `residuals` rows, centered to mean zero.
    pub fn centered(residuals: &DMatrix<f64>) -> Self {
        let mean = residuals.row_mean();
        let rows = residuals.row_iter().map(|r| (r - &mean).transpose()).collect();
        Self { rows }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> DVector<f64> {
        self.rows[rng.random_range(0..self.rows.len())].clone()
    }
}

/// Bootstrap data set: the fitted recursion driven by resampled residuals,
/// with initial rows, deterministics and exogenous series held at their
/// observed values.
pub fn residual_replicate<R: Rng + ?Sized>(
    dynamics: &Dynamics<'_>,
    data: &crate::estimator::SampleData,
    pool: &ResidualPool,
    rng: &mut R,
) -> crate::estimator::SampleData {
    let start = dynamics.estimate().start;
    let x = dynamics.simulate(&data.endog, &data.years, &data.exog, start, |_| pool.draw(rng));
    data.with_endog(x)
}
