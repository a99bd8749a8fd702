//! Data generators shared by unit tests.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::estimator::SampleData;

/// `dX_t = alpha beta' X_{t-1} + sum Gamma_i dX_{t-i} + c + L z_t` from `X = 0`.
pub(crate) struct Dgp {
    pub alpha: DMatrix<f64>,
    pub beta: DMatrix<f64>,
    pub gammas: Vec<DMatrix<f64>>,
    pub constant: DVector<f64>,
    pub chol: DMatrix<f64>,
}

impl Dgp {
    pub fn new(alpha: DMatrix<f64>, beta: DMatrix<f64>) -> Self {
        let n = alpha.nrows();
        Self { alpha, beta, gammas: vec![], constant: DVector::zeros(n), chol: DMatrix::identity(n, n) }
    }

    pub fn simulate(&self, t: usize, seed: u64) -> SampleData {
        let n = self.alpha.nrows();
        let pi = &self.alpha * self.beta.transpose();
        let k = self.gammas.len();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut x = DMatrix::<f64>::zeros(t, n);
        for i in (k + 1)..t {
            let z = DVector::from_fn(n, |_, _| StandardNormal.sample(&mut rng));
            let prev = x.row(i - 1).transpose();
            let mut dx = &pi * &prev + &self.constant + &self.chol * z;
            for (l, g) in self.gammas.iter().enumerate() {
                dx += g * (x.row(i - 1 - l) - x.row(i - 2 - l)).transpose();
            }
            x.set_row(i, &(prev + dx).transpose());
        }
        SampleData {
            years: (1000..1000 + t as i32).collect(),
            origin: 1000,
            endog: x,
            exog: DMatrix::zeros(t, 0),
            names: (0..n).map(|j| format!("x{j}")).collect(),
            exog_names: vec![],
        }
    }
}

/// The two-variable model (`alpha = (-0.5, 0)'`, `beta = (1, -1)'`, VAR(1), `Omega = I`)
/// attached to `data` with its exact residuals.
pub(crate) fn pair_estimate(data: &SampleData) -> crate::estimator::CvarEstimate {
    let alpha = DMatrix::from_column_slice(2, 1, &[-0.5, 0.0]);
    let beta = DMatrix::from_column_slice(2, 1, &[1.0, -1.0]);
    let t = data.len();
    let pi = &alpha * beta.transpose();
    let residuals = DMatrix::from_fn(t - 1, 2, |i, j| {
        let prev = data.endog.row(i).transpose();
        let fitted = &prev + &pi * &prev;
        data.endog[(i + 1, j)] - fitted[j]
    });
    crate::estimator::CvarEstimate {
        alpha,
        beta_star: beta,
        gammas: vec![],
        det_coef: DMatrix::zeros(2, 0),
        exog_coef: DMatrix::zeros(2, 0),
        omega: DMatrix::identity(2, 2),
        residuals,
        eigenvalues: DVector::zeros(2),
        loglik: 0.0,
        spec: crate::estimator::CvarSpec::new(1, 1),
        names: data.names.clone(),
        years: data.years[1..].to_vec(),
        origin: data.origin,
        start: 1,
    }
}
