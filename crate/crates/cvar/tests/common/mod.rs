//! Data generators shared by the integration tests.
#![allow(dead_code)]

use cvar::core::{CvarEstimate, CvarSpec, DMatrix, DVector, SampleData};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

/// `dX_t = alpha beta_t' X_{t-1} + sum_i Gamma_i dX_{t-i} + eps_t`, `eps ~ N(0, I)`,
/// started at zero. `beta_t` switches to `broken.1` from row `broken.0` on.
#[derive(Debug, Clone)]
pub struct Vecm {
    pub alpha: DMatrix<f64>,
    pub beta: DMatrix<f64>,
    pub gammas: Vec<DMatrix<f64>>,
    pub broken: Option<(usize, DMatrix<f64>)>,
}

impl Vecm {
    pub fn new(alpha: &[f64], beta: &[f64]) -> Self {
        let n = alpha.len();
        Self {
            alpha: DMatrix::from_column_slice(n, 1, alpha),
            beta: DMatrix::from_column_slice(n, 1, beta),
            gammas: vec![],
            broken: None,
        }
    }

    pub fn pair() -> Self {
        Self::new(&[-0.5, 0.0], &[1.0, -1.0])
    }

    pub fn simulate(&self, t: usize, seed: u64) -> SampleData {
        let n = self.alpha.nrows();
        let k = self.gammas.len() + 1;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut x = DMatrix::<f64>::zeros(t, n);
        for i in k..t {
            let beta = match &self.broken {
                Some((row, b)) if i >= *row => b,
                _ => &self.beta,
            };
            let prev = x.row(i - 1).transpose();
            let mut dx = &self.alpha * (beta.transpose() * &prev);
            for (j, g) in self.gammas.iter().enumerate() {
                dx += g * (x.row(i - 1 - j) - x.row(i - 2 - j)).transpose();
            }
            dx += DVector::from_fn(n, |_, _| StandardNormal.sample(&mut rng));
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

/// The two-variable VAR(1) of `Vecm::pair` attached to `data`, with its exact residuals.
pub fn pair_estimate(data: &SampleData) -> CvarEstimate {
    let alpha = DMatrix::from_column_slice(2, 1, &[-0.5, 0.0]);
    let beta = DMatrix::from_column_slice(2, 1, &[1.0, -1.0]);
    let pi = &alpha * beta.transpose();
    let t = data.len();
    let residuals = DMatrix::from_fn(t - 1, 2, |i, j| {
        let prev = data.endog.row(i).transpose();
        data.endog[(i + 1, j)] - (&prev + &pi * &prev)[j]
    });
    CvarEstimate {
        alpha,
        beta_star: beta,
        gammas: vec![],
        det_coef: DMatrix::zeros(2, 0),
        exog_coef: DMatrix::zeros(2, 0),
        omega: DMatrix::identity(2, 2),
        residuals,
        eigenvalues: DVector::zeros(2),
        loglik: 0.0,
        spec: CvarSpec::new(1, 1),
        names: data.names.clone(),
        years: data.years[1..].to_vec(),
        origin: data.origin,
        start: 1,
    }
}

/// Unit vector `e_i` of length `n` as an `n x 1` matrix.
pub fn unit(n: usize, i: usize) -> DMatrix<f64> {
    DMatrix::from_fn(n, 1, |r, _| if r == i { 1.0 } else { 0.0 })
}
