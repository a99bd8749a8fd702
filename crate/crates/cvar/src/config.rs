//! TOML run configuration and the model, restriction, policy and scenario files.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use cvar_core::{
    CvarSpec, DMatrix, DVector, DeterministicSpec, Normalization, Rank, RestrictionSet, Role,
};
use serde::Deserialize;

use crate::error::{Error, Result};

pub fn read_toml<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    toml::from_str(&text).map_err(|e| Error::format(path, e.to_string()))
}

/// Resolves `p` against the directory of `base` unless it is absolute.
pub fn resolve(base: &Path, p: &Path) -> PathBuf {
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.parent().unwrap_or(Path::new(".")).join(p)
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_out")]
    pub out: PathBuf,
    pub data: DataSection,
    pub model: Option<ModelSection>,
    #[serde(default)]
    pub ranktest: RankTestSection,
    #[serde(default)]
    pub longrun: LongRunSection,
    #[serde(default)]
    pub stability: StabilitySection,
    #[serde(default)]
    pub diagnostics: DiagnosticsSection,
    pub control: Option<ControlSection>,
    pub simulate: Option<SimulateSection>,
    /// Also write SVG charts next to the tables.
    #[serde(default)]
    pub plots: bool,
}

fn default_out() -> PathBuf {
    PathBuf::from("out")
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DataSection {
    pub path: PathBuf,
    #[serde(default = "default_delimiter")]
    pub delimiter: String,
    #[serde(default)]
    pub fill_gaps: bool,
    pub transforms: Option<PathBuf>,
    /// Column name to role (`endogenous`, `exogenous`, `deterministic`).
    pub roles: BTreeMap<String, String>,
    #[serde(default)]
    pub units: BTreeMap<String, String>,
}

fn default_delimiter() -> String {
    ",".into()
}

impl DataSection {
    pub fn delimiter_byte(&self, path: &Path) -> Result<u8> {
        match self.delimiter.as_str() {
            "\\t" | "tab" => Ok(b'\t'),
            d if d.len() == 1 => Ok(d.as_bytes()[0]),
            d => Err(Error::format(path, format!("delimiter must be one character, got `{d}`"))),
        }
    }

    pub fn schema(&self, path: &Path) -> Result<BTreeMap<String, Role>> {
        self.roles
            .iter()
            .map(|(k, v)| {
                v.parse::<Role>()
                    .map(|r| (k.clone(), r))
                    .map_err(|_| Error::format(path, format!("unknown role `{v}` for column `{k}`")))
            })
            .collect()
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSection {
    pub spec: PathBuf,
    pub restrictions: Option<PathBuf>,
    /// Estimate artifact read by `control` and `simulate`; defaults to
    /// `<out>/estimate.json`.
    pub estimate: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq, Eq, Default)]
#[serde(rename_all = "lowercase")]
pub enum RankMethod {
    /// Tables for standard deterministic cases, bootstrap otherwise.
    #[default]
    Auto,
    Asymptotic,
    Bootstrap,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RankTestSection {
    #[serde(default)]
    pub method: RankMethod,
    #[serde(default = "default_rank_b")]
    pub replications: usize,
    #[serde(default = "default_level")]
    pub level: f64,
}

fn default_rank_b() -> usize {
    199
}

fn default_level() -> f64 {
    0.05
}

impl Default for RankTestSection {
    fn default() -> Self {
        Self { method: RankMethod::Auto, replications: default_rank_b(), level: default_level() }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IndicatorSection {
    pub y: String,
    pub c: String,
    pub m: String,
    pub h: String,
    /// 1-based cointegration vector holding the damage coefficient.
    #[serde(default = "one")]
    pub damage_vector: usize,
    #[serde(default = "two")]
    pub climate_vector: usize,
    #[serde(default = "default_delta_m")]
    pub delta_m: f64,
    #[serde(default = "default_stock")]
    pub stock_gtc: f64,
}

fn one() -> usize {
    1
}
fn two() -> usize {
    2
}
fn default_delta_m() -> f64 {
    0.33
}
fn default_stock() -> f64 {
    800.0
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LongRunSection {
    /// Bootstrap replications for the t-statistics of `C` (0 disables).
    #[serde(default = "default_c_b")]
    pub replications: usize,
    pub indicators: Option<IndicatorSection>,
}

fn default_c_b() -> usize {
    199
}

impl Default for LongRunSection {
    fn default() -> Self {
        Self { replications: default_c_b(), indicators: None }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StabilitySection {
    #[serde(default = "default_tmin")]
    pub t_min_fraction: f64,
    #[serde(default = "default_stab_b")]
    pub replications: usize,
    /// External 95% reference; skips the bootstrap.
    pub reference: Option<f64>,
}

fn default_tmin() -> f64 {
    0.1
}
fn default_stab_b() -> usize {
    399
}

impl Default for StabilitySection {
    fn default() -> Self {
        Self { t_min_fraction: default_tmin(), replications: default_stab_b(), reference: None }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagnosticsSection {
    #[serde(default = "default_max_lag")]
    pub max_lag: usize,
}

fn default_max_lag() -> usize {
    12
}

impl Default for DiagnosticsSection {
    fn default() -> Self {
        Self { max_lag: default_max_lag() }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ControlSection {
    pub policy: PathBuf,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulateSection {
    pub scenario: PathBuf,
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum RankValue {
    Fixed(usize),
    Word(String),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub lag_order: usize,
    pub rank: RankValue,
    #[serde(default)]
    pub constant: bool,
    #[serde(default)]
    pub unrestricted_trend: bool,
    #[serde(default)]
    pub restricted_constant: bool,
    #[serde(default)]
    pub step_dummies: Vec<i32>,
    #[serde(default)]
    pub restricted_trends: Vec<i32>,
    #[serde(default)]
    pub exogenous: Vec<String>,
    pub exog_lags: Option<Vec<usize>>,
    /// One variable per cointegration vector carrying a unit coefficient.
    pub normalization: Option<Vec<String>>,
}

impl ModelFile {
    pub fn to_spec(&self, path: &Path, names: &[String]) -> Result<CvarSpec> {
        let rank = match &self.rank {
            RankValue::Fixed(r) => Rank::Fixed(*r),
            RankValue::Word(w) if w == "search" => Rank::Search,
            RankValue::Word(w) => return Err(Error::format(path, format!("rank must be a count or \"search\", got `{w}`"))),
        };
        let det = DeterministicSpec {
            constant: self.constant,
            unrestricted_trend: self.unrestricted_trend,
            step_dummies: self.step_dummies.clone(),
            restricted_trends: self.restricted_trends.clone(),
            restricted_constant: self.restricted_constant,
        };
        let mut spec = CvarSpec::new(self.lag_order, 0).with_deterministic(det);
        spec.rank = rank;
        if !self.exogenous.is_empty() {
            spec = spec.with_exogenous(self.exogenous.clone(), self.exog_lags.clone().unwrap_or_else(|| vec![1]));
        }
        if let Some(norm) = &self.normalization {
            let idx = norm
                .iter()
                .map(|v| {
                    names
                        .iter()
                        .position(|n| n == v)
                        .ok_or_else(|| Error::format(path, format!("normalization variable `{v}` is not endogenous")))
                })
                .collect::<Result<Vec<_>>>()?;
            spec.normalization = Normalization::Variables(idx);
        }
        Ok(spec)
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RestrictionFile {
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default = "default_max_iter")]
    pub max_iter: usize,
    #[serde(default)]
    pub vector: Vec<VectorRestriction>,
    #[serde(default)]
    pub alpha_zero: Vec<AlphaZero>,
}

fn default_tol() -> f64 {
    1e-10
}
fn default_max_iter() -> usize {
    1000
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorRestriction {
    /// Columns of `H`, each a map from row name to weight. Absent or empty
    /// means the vector is unrestricted.
    #[serde(default)]
    pub columns: Vec<BTreeMap<String, f64>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlphaZero {
    pub variable: String,
    /// 1-based cointegration vector.
    pub vector: usize,
}

impl RestrictionFile {
    /// `rows` names the rows of `beta*`: endogenous variables then
    /// restricted deterministic terms.
    pub fn to_set(&self, path: &Path, rows: &[String], endogenous: &[String]) -> Result<RestrictionSet> {
        let lookup = |names: &[String], v: &str| {
            names.iter().position(|n| n == v).ok_or_else(|| Error::format(path, format!("unknown row `{v}`")))
        };
        let mut beta = Vec::with_capacity(self.vector.len());
        for v in &self.vector {
            if v.columns.is_empty() {
                beta.push(None);
                continue;
            }
            let mut h = DMatrix::zeros(rows.len(), v.columns.len());
            for (j, col) in v.columns.iter().enumerate() {
                for (name, w) in col {
                    h[(lookup(rows, name)?, j)] = *w;
                }
            }
            beta.push(Some(h));
        }
        let alpha_zeros = self
            .alpha_zero
            .iter()
            .map(|z| {
                if z.vector == 0 {
                    return Err(Error::format(path, "alpha_zero vectors are numbered from 1"));
                }
                Ok((lookup(endogenous, &z.variable)?, z.vector - 1))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RestrictionSet { beta, alpha_zeros })
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolicyFile {
    #[serde(default)]
    pub name: String,
    /// Control combinations `a`, one weight map per control.
    pub controls: Vec<BTreeMap<String, f64>>,
    /// Target combinations `b`, one weight map per target.
    pub targets: Vec<BTreeMap<String, f64>>,
    pub b_star: Option<Vec<f64>>,
    /// Set the objective to the observed `b'X` of this year.
    pub b_star_year: Option<i32>,
    pub start: i32,
    #[serde(default = "default_ramp")]
    pub ramp: u32,
}

fn default_ramp() -> u32 {
    10
}

pub fn weights(path: &Path, names: &[String], maps: &[BTreeMap<String, f64>]) -> Result<DMatrix<f64>> {
    let mut m = DMatrix::zeros(names.len(), maps.len());
    for (j, map) in maps.iter().enumerate() {
        for (k, w) in map {
            let i = names
                .iter()
                .position(|n| n == k)
                .ok_or_else(|| Error::format(path, format!("unknown variable `{k}`")))?;
            m[(i, j)] = *w;
        }
    }
    Ok(m)
}

impl PolicyFile {
    /// `(a, b, b_star)`; the objective comes from `b_star` or from the
    /// observed state in `b_star_year`.
    pub fn matrices(
        &self,
        path: &Path,
        names: &[String],
        observed_at: impl Fn(i32) -> Option<DVector<f64>>,
    ) -> Result<(DMatrix<f64>, DMatrix<f64>, DVector<f64>)> {
        let a = weights(path, names, &self.controls)?;
        let b = weights(path, names, &self.targets)?;
        let b_star = match (&self.b_star, self.b_star_year) {
            (Some(v), None) => DVector::from_vec(v.clone()),
            (None, Some(y)) => {
                let x = observed_at(y).ok_or_else(|| Error::format(path, format!("b_star_year {y} outside the data")))?;
                b.transpose() * x
            }
            _ => return Err(Error::format(path, "give exactly one of b_star and b_star_year")),
        };
        Ok((a, b, b_star))
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub label: String,
    pub policy: Option<PathBuf>,
    pub start: Option<i32>,
    pub ramp: Option<u32>,
    #[serde(default)]
    pub horizon: usize,
    #[serde(default = "default_band_b")]
    pub replications: usize,
    pub seed: Option<u64>,
    pub residual_window: Option<[i32; 2]>,
    pub reference_year: Option<i32>,
    #[serde(default)]
    pub log_variables: Vec<String>,
    #[serde(default = "default_lower")]
    pub lower: f64,
    #[serde(default = "default_upper")]
    pub upper: f64,
}

fn default_band_b() -> usize {
    500
}
fn default_lower() -> f64 {
    0.05
}
fn default_upper() -> f64 {
    0.95
}
