//! Reduced-rank estimation of the cointegrated VAR in error-correction form
//!
//! `dX_t = alpha beta*' (X_{t-1}, D_r(t)) + sum_i Gamma_i dX_{t-i} + Phi D_u(t)
//!         + sum_l Psi_l df_{t-l} + eps_t`.

mod concentrate;
mod fit;
mod restricted;
mod rrr;
pub mod tables;
mod trace;

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use nalgebra::{DMatrix, DVector};

use crate::deterministic::DeterministicSpec;
use crate::error::{Error, Result};
use crate::frame::{Role, TimeFrame};

pub use concentrate::{concentrate, concentrate_data, Concentrated};
pub use fit::{fit, fit_data, fit_with_rank};
pub use restricted::{estimate_restricted, estimate_restricted_data, RestrictedFit, RestrictionSet};
pub use rrr::{rrr_solve, RrrSolution};
pub use trace::{trace_statistics, trace_test, trace_test_data, TraceMethod, TraceRow, TraceTest};

/// Cointegration rank: fixed, or chosen by the trace test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rank {
    Fixed(usize),
    Search,
}

/// How each cointegration vector is normalized.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum Normalization {
    /// `beta*` has an identity block on the first `r` variables.
    #[default]
    IdentityBlock,
    /// Unit coefficient on the given variable index, one per vector.
    Variables(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CvarSpec {
    /// VAR order `k`; the model has `k - 1` lagged differences.
    pub lag_order: usize,
    pub rank: Rank,
    pub deterministic: DeterministicSpec,
    /// Exogenous columns entering unrestricted in differences.
    pub exogenous: Vec<String>,
    /// Lags of the exogenous differences (default: one lag).
    pub exog_lags: Vec<usize>,
    pub normalization: Normalization,
}

impl CvarSpec {
    pub fn new(lag_order: usize, rank: usize) -> Self {
        Self {
            lag_order,
            rank: Rank::Fixed(rank),
            deterministic: DeterministicSpec::default(),
            exogenous: Vec::new(),
            exog_lags: vec![1],
            normalization: Normalization::IdentityBlock,
        }
    }

    pub fn with_deterministic(mut self, d: DeterministicSpec) -> Self {
        self.deterministic = d;
        self
    }

    pub fn with_exogenous(mut self, names: Vec<String>, lags: Vec<usize>) -> Self {
        self.exogenous = names;
        self.exog_lags = lags;
        self
    }

    pub fn with_rank(mut self, rank: usize) -> Self {
        self.rank = Rank::Fixed(rank);
        self
    }

    pub fn fixed_rank(&self) -> Result<usize> {
        match self.rank {
            Rank::Fixed(r) => Ok(r),
            Rank::Search => Err(Error::InvalidSpec("rank must be fixed for estimation".into())),
        }
    }

    pub(crate) fn exog_columns(&self) -> usize {
        self.exogenous.len() * self.exog_lags.len()
    }

    /// First row of the data that can serve as a dependent observation.
    pub(crate) fn first_row(&self) -> usize {
        let exog_need = if self.exogenous.is_empty() {
            0
        } else {
            self.exog_lags.iter().max().copied().unwrap_or(0) + 1
        };
        self.lag_order.max(exog_need).max(1)
    }
}

/// Numeric inputs of an estimation: endogenous levels and exogenous columns.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleData {
    pub years: Vec<i32>,
    /// Year where the trend index equals one.
    pub origin: i32,
    pub endog: DMatrix<f64>,
    pub exog: DMatrix<f64>,
    pub names: Vec<String>,
    pub exog_names: Vec<String>,
}

impl SampleData {
    pub fn from_frame(frame: &TimeFrame, spec: &CvarSpec) -> Result<Self> {
        frame.validate_prepared()?;
        let endo = frame.indices_with_role(Role::Endogenous);
        if endo.is_empty() {
            return Err(Error::InvalidSpec("no endogenous columns".into()));
        }
        let mut exo = Vec::with_capacity(spec.exogenous.len());
        for name in &spec.exogenous {
            let j = frame.column_index(name)?;
            if frame.roles()[j] != Role::Exogenous {
                return Err(Error::InvalidSpec(alloc::format!(
                    "column `{name}` is not tagged exogenous"
                )));
            }
            exo.push(j);
        }
        let v = frame.values();
        let t = frame.len();
        Ok(Self {
            years: frame.years().to_vec(),
            origin: frame.first_year(),
            endog: DMatrix::from_fn(t, endo.len(), |i, j| v[(i, endo[j])]),
            exog: DMatrix::from_fn(t, exo.len(), |i, j| v[(i, exo[j])]),
            names: endo.iter().map(|&j| frame.names()[j].clone()).collect(),
            exog_names: spec.exogenous.clone(),
        })
    }

    pub fn with_endog(&self, endog: DMatrix<f64>) -> Self {
        Self { endog, ..self.clone() }
    }

    pub fn n(&self) -> usize {
        self.endog.ncols()
    }

    pub fn len(&self) -> usize {
        self.years.len()
    }

    pub fn is_empty(&self) -> bool {
        self.years.is_empty()
    }
}

/// Fitted error-correction model.
#[derive(Debug, Clone, PartialEq)]
pub struct CvarEstimate {
    /// Adjustment coefficients, `n x r`.
    pub alpha: DMatrix<f64>,
    /// Cointegration vectors including restricted deterministic rows, `(n + q_r) x r`.
    pub beta_star: DMatrix<f64>,
    /// Short-run matrices `Gamma_1 .. Gamma_{k-1}`.
    pub gammas: Vec<DMatrix<f64>>,
    /// Coefficients on unrestricted deterministic terms, `n x q_u`.
    pub det_coef: DMatrix<f64>,
    /// Coefficients on lagged exogenous differences, `n x (p * lags)`,
    /// ordered lag-major.
    pub exog_coef: DMatrix<f64>,
    pub omega: DMatrix<f64>,
    /// Residuals over the effective sample, `T_eff x n`.
    pub residuals: DMatrix<f64>,
    /// Squared canonical correlations, nonincreasing.
    pub eigenvalues: DVector<f64>,
    pub loglik: f64,
    pub spec: CvarSpec,
    pub names: Vec<String>,
    /// Years of the effective sample.
    pub years: Vec<i32>,
    pub origin: i32,
    /// Row of the data where the effective sample starts.
    pub start: usize,
}

impl CvarEstimate {
    pub fn n(&self) -> usize {
        self.alpha.nrows()
    }

    pub fn rank(&self) -> usize {
        self.alpha.ncols()
    }

    pub fn t_eff(&self) -> usize {
        self.residuals.nrows()
    }

    pub fn lag_order(&self) -> usize {
        self.spec.lag_order
    }

    /// Stochastic block of `beta*`, `n x r`.
    pub fn beta(&self) -> DMatrix<f64> {
        self.beta_star.rows(0, self.n()).into_owned()
    }

    /// Restricted deterministic rows of `beta*`, `q_r x r`.
    pub fn beta_det(&self) -> DMatrix<f64> {
        let n = self.n();
        self.beta_star.rows(n, self.beta_star.nrows() - n).into_owned()
    }

    /// `alpha beta*'`, `n x (n + q_r)`.
    pub fn pi_star(&self) -> DMatrix<f64> {
        &self.alpha * self.beta_star.transpose()
    }

    /// `mu_t` with `beta*' (X, D_r(year)) = beta' X - mu_t`.
    pub fn mu_at(&self, year: i32) -> DVector<f64> {
        let d = DVector::from_vec(self.spec.deterministic.restricted_at(year, self.origin));
        -(self.beta_det().transpose() * d)
    }

    /// Mean of `beta'X_t` in the equilibrium the model tends to at `year`.
    ///
    /// Equals `mu_at(year)` when all deterministic terms are restricted.
    /// Unrestricted terms add an offset `rho` that solves
    /// `Gamma g = alpha rho + Phi D_u(year)` and `beta'g = mu_t - mu_{t-1}`,
    /// where `g` is the growth rate of `X` and `Gamma = I - sum Gamma_i`.
    /// An unrestricted linear trend is frozen at its value in `year`.
    pub fn equilibrium_mean(&self, year: i32) -> Result<DVector<f64>> {
        let mu = self.mu_at(year);
        let d = &self.spec.deterministic;
        if d.unrestricted_count() == 0 || self.rank() == 0 {
            return Ok(mu);
        }
        let n = self.n();
        let r = self.rank();
        let phi = &self.det_coef * DVector::from_vec(d.unrestricted_at(year, self.origin));
        let slope = &mu - self.mu_at(year - 1);
        let mut gamma = DMatrix::identity(n, n);
        for g in &self.gammas {
            gamma -= g;
        }
        let beta = self.beta();
        let mut m = DMatrix::zeros(n + r, n + r);
        m.view_mut((0, 0), (n, n)).copy_from(&gamma);
        m.view_mut((0, n), (n, r)).copy_from(&(-&self.alpha));
        m.view_mut((n, 0), (r, n)).copy_from(&beta.transpose());
        let mut rhs = DVector::zeros(n + r);
        rhs.rows_mut(0, n).copy_from(&phi);
        rhs.rows_mut(n, r).copy_from(&slope);
        let x = m.lu().solve(&rhs).ok_or(Error::I1ConditionFails)?;
        Ok(mu + x.rows(n, r))
    }

    /// Levels-form VAR matrices `A_1 .. A_k`.
    pub fn levels_matrices(&self) -> Vec<DMatrix<f64>> {
        let n = self.n();
        let k = self.lag_order();
        let pi = &self.alpha * self.beta().transpose();
        let mut out = Vec::with_capacity(k);
        for i in 1..=k {
            let mut a = DMatrix::zeros(n, n);
            if i == 1 {
                a += DMatrix::identity(n, n) + &pi;
            }
            if i < k {
                a += &self.gammas[i - 1];
            }
            if i >= 2 {
                a -= &self.gammas[i - 2];
            }
            out.push(a);
        }
        out
    }
}

/// How bootstrap replicates re-estimate the model.
#[derive(Debug, Clone, PartialEq)]
pub enum Refit {
    Unrestricted,
    Restricted { restrictions: RestrictionSet, tol: f64, max_iter: usize },
}

impl Refit {
    pub fn fit(&self, data: &SampleData, spec: &CvarSpec) -> Result<CvarEstimate> {
        match self {
            Refit::Unrestricted => fit_data(data, spec),
            Refit::Restricted { restrictions, tol, max_iter } => {
                estimate_restricted_data(data, spec, restrictions, *tol, *max_iter).map(|f| f.estimate)
            }
        }
    }
}
