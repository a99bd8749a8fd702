//! Versioned JSON serialization of fitted models.

use std::path::Path;

use cvar_core::{CvarEstimate, CvarSpec, DMatrix, DVector, DeterministicSpec, Normalization, Rank};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;

/// Row-major dense matrix.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f64>,
}

impl From<&DMatrix<f64>> for Matrix {
    fn from(m: &DMatrix<f64>) -> Self {
        let data = (0..m.nrows()).flat_map(|i| (0..m.ncols()).map(move |j| m[(i, j)])).collect();
        Self { rows: m.nrows(), cols: m.ncols(), data }
    }
}

impl Matrix {
    pub fn to_dmatrix(&self, path: &Path, what: &str) -> Result<DMatrix<f64>> {
        if self.data.len() != self.rows * self.cols {
            return Err(Error::format(path, format!("{what}: {} values for {}x{}", self.data.len(), self.rows, self.cols)));
        }
        Ok(DMatrix::from_row_slice(self.rows, self.cols, &self.data))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Deterministics {
    pub constant: bool,
    pub unrestricted_trend: bool,
    pub restricted_constant: bool,
    pub step_dummies: Vec<i32>,
    pub restricted_trends: Vec<i32>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RestrictionTest {
    pub lr: f64,
    pub df: usize,
    pub p_value: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct EstimateArtifact {
    pub format_version: u32,
    pub config_hash: String,
    pub seed: u64,
    pub names: Vec<String>,
    pub beta_rows: Vec<String>,
    pub lag_order: usize,
    pub rank: usize,
    pub deterministics: Deterministics,
    pub exogenous: Vec<String>,
    pub exog_lags: Vec<usize>,
    pub normalization: Option<Vec<usize>>,
    /// Trend origin: year with index 1.
    pub origin: i32,
    /// First year of the data the model was fitted on.
    pub data_first_year: i32,
    pub start_row: usize,
    pub years: Vec<i32>,
    pub alpha: Matrix,
    pub beta_star: Matrix,
    pub gammas: Vec<Matrix>,
    pub det_coef: Matrix,
    pub exog_coef: Matrix,
    pub omega: Matrix,
    pub residuals: Matrix,
    pub eigenvalues: Vec<f64>,
    pub loglik: f64,
    pub restriction_test: Option<RestrictionTest>,
}

impl EstimateArtifact {
    pub fn from_estimate(est: &CvarEstimate, config_hash: &str, seed: u64, test: Option<RestrictionTest>) -> Self {
        let d = &est.spec.deterministic;
        let mut beta_rows = est.names.clone();
        beta_rows.extend(d.restricted_names());
        Self {
            format_version: FORMAT_VERSION,
            config_hash: config_hash.to_string(),
            seed,
            names: est.names.clone(),
            beta_rows,
            lag_order: est.lag_order(),
            rank: est.rank(),
            deterministics: Deterministics {
                constant: d.constant,
                unrestricted_trend: d.unrestricted_trend,
                restricted_constant: d.restricted_constant,
                step_dummies: d.step_dummies.clone(),
                restricted_trends: d.restricted_trends.clone(),
            },
            exogenous: est.spec.exogenous.clone(),
            exog_lags: est.spec.exog_lags.clone(),
            normalization: match &est.spec.normalization {
                Normalization::IdentityBlock => None,
                Normalization::Variables(v) => Some(v.clone()),
            },
            origin: est.origin,
            data_first_year: est.years.first().copied().unwrap_or(est.origin) - est.start as i32,
            start_row: est.start,
            years: est.years.clone(),
            alpha: (&est.alpha).into(),
            beta_star: (&est.beta_star).into(),
            gammas: est.gammas.iter().map(Matrix::from).collect(),
            det_coef: (&est.det_coef).into(),
            exog_coef: (&est.exog_coef).into(),
            omega: (&est.omega).into(),
            residuals: (&est.residuals).into(),
            eigenvalues: est.eigenvalues.iter().copied().collect(),
            loglik: est.loglik,
            restriction_test: test,
        }
    }

    pub fn to_estimate(&self, path: &Path) -> Result<CvarEstimate> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::format(path, format!("unsupported format version {}", self.format_version)));
        }
        let d = &self.deterministics;
        let det = DeterministicSpec {
            constant: d.constant,
            unrestricted_trend: d.unrestricted_trend,
            step_dummies: d.step_dummies.clone(),
            restricted_trends: d.restricted_trends.clone(),
            restricted_constant: d.restricted_constant,
        };
        let mut spec = CvarSpec::new(self.lag_order, self.rank).with_deterministic(det);
        if !self.exogenous.is_empty() {
            spec = spec.with_exogenous(self.exogenous.clone(), self.exog_lags.clone());
        }
        spec.rank = Rank::Fixed(self.rank);
        if let Some(v) = &self.normalization {
            spec.normalization = Normalization::Variables(v.clone());
        }
        let est = CvarEstimate {
            alpha: self.alpha.to_dmatrix(path, "alpha")?,
            beta_star: self.beta_star.to_dmatrix(path, "beta_star")?,
            gammas: self.gammas.iter().map(|g| g.to_dmatrix(path, "gamma")).collect::<Result<_>>()?,
            det_coef: self.det_coef.to_dmatrix(path, "det_coef")?,
            exog_coef: self.exog_coef.to_dmatrix(path, "exog_coef")?,
            omega: self.omega.to_dmatrix(path, "omega")?,
            residuals: self.residuals.to_dmatrix(path, "residuals")?,
            eigenvalues: DVector::from_vec(self.eigenvalues.clone()),
            loglik: self.loglik,
            spec,
            names: self.names.clone(),
            years: self.years.clone(),
            origin: self.origin,
            start: self.start_row,
        };
        let n = est.names.len();
        let r = self.rank;
        let ok = est.alpha.shape() == (n, r)
            && est.beta_star.shape() == (n + est.spec.deterministic.restricted_count(), r)
            && est.omega.shape() == (n, n)
            && est.gammas.len() == self.lag_order.saturating_sub(1)
            && est.gammas.iter().all(|g| g.shape() == (n, n))
            && est.residuals.ncols() == n
            && est.residuals.nrows() == est.years.len();
        if !ok {
            return Err(Error::format(path, "matrix shapes do not match the model description"));
        }
        Ok(est)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("artifact serializes");
        s.push('\n');
        s
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| Error::format(path, e.to_string()))
    }
}
