//! Counterfactual replay, forecasts, residual-bootstrap bands and policy costs.
//!
//! Timing: the rule acts on `X_t` and the fitted recursion, with its original
//! parameters, carries the controlled state `X_t^ctr` forward to `X_{t+1}`.
//! Reported levels are the pre-control states `X^new`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use libm::exp;
use nalgebra::{DMatrix, DVector};

use crate::control::ControlPolicy;
use crate::dynamics::{Dynamics, ResidualPool};
use crate::error::{Error, Result};
use crate::estimator::{CvarEstimate, SampleData};
use crate::replicate::{salted, Runner, SeedMode};

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationPath {
    pub years: Vec<i32>,
    /// `X^new`, `T x n`.
    pub levels: DMatrix<f64>,
    /// `X^ctr = X^new + lambda_t nu(X^new)`.
    pub controlled: DMatrix<f64>,
    /// `a' (X^ctr - X^new)`, `T x m`; zero where the rule is inactive.
    pub injections: DMatrix<f64>,
    pub label: String,
}

/// Rows, exogenous path and initial values of one simulation.
struct Timeline<'a> {
    years: Vec<i32>,
    exog: DMatrix<f64>,
    init: &'a DMatrix<f64>,
    /// First simulated row.
    start: usize,
    /// Equilibrium mean of `beta'X` per row, used by the rule.
    mus: Vec<DVector<f64>>,
}

impl<'a> Timeline<'a> {
    fn new(est: &CvarEstimate, years: Vec<i32>, exog: DMatrix<f64>, init: &'a DMatrix<f64>, start: usize) -> Result<Self> {
        let mus = years.iter().map(|&y| est.equilibrium_mean(y)).collect::<Result<Vec<_>>>()?;
        Ok(Self { years, exog, init, start, mus })
    }
}

fn run(
    dynamics: &Dynamics<'_>,
    policy: Option<&ControlPolicy>,
    tl: &Timeline<'_>,
    label: &str,
    mut shock: impl FnMut(usize) -> DVector<f64>,
) -> SimulationPath {
    let est = dynamics.estimate();
    let n = est.n();
    let t = tl.years.len();
    let m = policy.map(|p| p.m()).unwrap_or(0);
    let mut new: Vec<DVector<f64>> = Vec::with_capacity(t);
    let mut ctr: Vec<DVector<f64>> = Vec::with_capacity(t);
    let mut injections = DMatrix::zeros(t, m);
    for row in 0..t {
        let x = if row < tl.start {
            tl.init.row(row).transpose()
        } else {
            dynamics.conditional_mean(&ctr, row, tl.years[row], &tl.exog) + shock(row)
        };
        let mut c = x.clone();
        if let Some(p) = policy {
            if row + 1 >= tl.start && row + 1 < t {
                let w = p.phase_in.weight(tl.years[row]);
                if w > 0.0 {
                    let delta = p.nu(&x, &tl.mus[row + 1]) * w;
                    injections.set_row(row, &(p.a.transpose() * &delta).transpose());
                    c += delta;
                }
            }
        }
        new.push(x);
        ctr.push(c);
    }
    SimulationPath {
        years: tl.years.clone(),
        levels: DMatrix::from_fn(t, n, |i, j| new[i][j]),
        controlled: DMatrix::from_fn(t, n, |i, j| ctr[i][j]),
        injections,
        label: String::from(label),
    }
}

/// Replays history from the policy start with the fitted residuals.
///
/// Rows up to the policy start are the observed data; with `policy = None`
/// the whole observed sample is reproduced.
pub fn replay_counterfactual(
    est: &CvarEstimate,
    policy: Option<&ControlPolicy>,
    data: &SampleData,
) -> Result<SimulationPath> {
    let start = replay_start(est, policy, data)?;
    let tl = Timeline::new(est, data.years.clone(), data.exog.clone(), &data.endog, start)?;
    let dynamics = Dynamics::new(est);
    let label = if policy.is_some() { "counterfactual" } else { "replay" };
    Ok(run(&dynamics, policy, &tl, label, |row| est.residuals.row(row - est.start).transpose()))
}

fn replay_start(est: &CvarEstimate, policy: Option<&ControlPolicy>, data: &SampleData) -> Result<usize> {
    if data.years.first().copied() != est.years.first().map(|y| y - est.start as i32) || data.n() != est.n() {
        return Err(Error::DimensionMismatch("estimate was not fitted on this data".into()));
    }
    match policy {
        None => Ok(est.start),
        Some(p) => {
            let row = data
                .years
                .iter()
                .position(|&y| y == p.phase_in.start)
                .ok_or(Error::YearOutOfRange(p.phase_in.start))?;
            if row + 1 < est.start {
                return Err(Error::YearOutOfRange(p.phase_in.start));
            }
            Ok(row + 1)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BandConfig {
    pub replications: usize,
    pub seed: u64,
    /// Inclusive year range of residuals to resample; `None` uses all.
    pub window: Option<(i32, i32)>,
    pub lower: f64,
    pub upper: f64,
    pub seed_mode: SeedMode,
}

impl BandConfig {
    pub fn new(replications: usize, seed: u64) -> Self {
        Self { replications, seed, window: None, lower: 0.05, upper: 0.95, seed_mode: SeedMode::PerReplicate }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BootstrapBands {
    pub years: Vec<i32>,
    pub mean: DMatrix<f64>,
    pub lower: DMatrix<f64>,
    pub upper: DMatrix<f64>,
    pub lower_prob: f64,
    pub upper_prob: f64,
    pub replications: usize,
    pub seed: u64,
    pub warnings: Vec<String>,
}

const MIN_WINDOW: usize = 10;
const WARN_WINDOW: usize = 30;

fn residual_pool(est: &CvarEstimate, window: Option<(i32, i32)>) -> Result<(ResidualPool, Vec<String>)> {
    let rows: Vec<usize> = match window {
        None => (0..est.t_eff()).collect(),
        Some((a, b)) => est.years.iter().enumerate().filter(|(_, y)| **y >= a && **y <= b).map(|(i, _)| i).collect(),
    };
    if rows.len() < MIN_WINDOW {
        return Err(Error::WindowTooShort { len: rows.len() });
    }
    let mut warnings = Vec::new();
    if rows.len() < WARN_WINDOW {
        warnings.push(format!("residual window has only {} observations", rows.len()));
    }
    let sub = DMatrix::from_fn(rows.len(), est.n(), |i, j| est.residuals[(rows[i], j)]);
    Ok((ResidualPool::centered(&sub), warnings))
}

/// Type-7 sample quantile of sorted data.
fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

fn bands_for<R: Runner>(
    dynamics: &Dynamics<'_>,
    policy: Option<&ControlPolicy>,
    tl: &Timeline<'_>,
    cfg: &BandConfig,
    runner: &R,
) -> Result<BootstrapBands> {
    if cfg.replications < 2 {
        return Err(Error::InvalidSpec("bands need at least two replications".into()));
    }
    if !(0.0..=1.0).contains(&cfg.lower) || !(cfg.lower..=1.0).contains(&cfg.upper) {
        return Err(Error::InvalidSpec("band probabilities must satisfy 0 <= lower <= upper <= 1".into()));
    }
    let est = dynamics.estimate();
    let (pool, warnings) = residual_pool(est, cfg.window)?;
    let stream = salted(cfg.seed, 0x6261_6e64);
    let paths: Vec<DMatrix<f64>> = runner.map(cfg.replications, |b| {
        let mut rng = cfg.seed_mode.rng(stream, b as u64);
        run(dynamics, policy, tl, "", |_| pool.draw(&mut rng)).levels
    });
    let (t, n) = paths[0].shape();
    let bsz = paths.len();
    let mut mean = DMatrix::zeros(t, n);
    let mut lower = DMatrix::zeros(t, n);
    let mut upper = DMatrix::zeros(t, n);
    let mut buf = Vec::with_capacity(bsz);
    for i in 0..t {
        for j in 0..n {
            buf.clear();
            buf.extend(paths.iter().map(|p| p[(i, j)]));
            // Summed in replicate order so the result does not depend on the runner.
            let m = buf.iter().sum::<f64>() / bsz as f64;
            buf.sort_by(f64::total_cmp);
            let lo = quantile_sorted(&buf, cfg.lower);
            let hi = quantile_sorted(&buf, cfg.upper);
            mean[(i, j)] = m;
            lower[(i, j)] = lo;
            upper[(i, j)] = hi;
        }
    }
    Ok(BootstrapBands {
        years: tl.years.clone(),
        mean,
        lower,
        upper,
        lower_prob: cfg.lower,
        upper_prob: cfg.upper,
        replications: cfg.replications,
        seed: cfg.seed,
        warnings,
    })
}

/// Bands around the replayed path: each replicate reruns the history from
/// the policy start with residuals resampled from the window.
pub fn bootstrap_bands<R: Runner>(
    est: &CvarEstimate,
    policy: Option<&ControlPolicy>,
    data: &SampleData,
    cfg: &BandConfig,
    runner: &R,
) -> Result<BootstrapBands> {
    let start = replay_start(est, policy, data)?;
    let tl = Timeline::new(est, data.years.clone(), data.exog.clone(), &data.endog, start)?;
    bands_for(&Dynamics::new(est), policy, &tl, cfg, runner)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Forecast {
    /// Observed sample followed by the zero-shock projection.
    pub point: SimulationPath,
    pub bands: Option<BootstrapBands>,
    /// Row of `point` where the projection starts.
    pub start: usize,
}

/// Projects `horizon` years past the sample. Deterministic terms follow their
/// definitions and exogenous series stay at their last value.
pub fn forecast<R: Runner>(
    est: &CvarEstimate,
    data: &SampleData,
    horizon: usize,
    policy: Option<&ControlPolicy>,
    bands: Option<&BandConfig>,
    runner: &R,
) -> Result<Forecast> {
    if horizon == 0 {
        return Err(Error::InvalidSpec("forecast horizon must be at least 1".into()));
    }
    let t0 = data.len();
    let last = *data.years.last().ok_or(Error::InsufficientObservations { available: 0, required: 1 })?;
    let mut years = data.years.clone();
    years.extend((1..=horizon as i32).map(|h| last + h));
    let p = data.exog.ncols();
    let exog = DMatrix::from_fn(t0 + horizon, p, |i, j| data.exog[(i.min(t0 - 1), j)]);
    let tl = Timeline::new(est, years, exog, &data.endog, t0)?;
    let dynamics = Dynamics::new(est);
    let n = est.n();
    let label = if policy.is_some() { "forecast with policy" } else { "forecast" };
    let point = run(&dynamics, policy, &tl, label, |_| DVector::zeros(n));
    let bands = match bands {
        Some(cfg) => Some(bands_for(&dynamics, policy, &tl, cfg, runner)?),
        None => None,
    };
    Ok(Forecast { point, bands, start: t0 })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CostEntry {
    pub name: String,
    pub observed: f64,
    pub counterfactual: f64,
    /// Percent change for log variables, level difference otherwise.
    pub change: f64,
    pub percent: bool,
    /// Latest observed (interpolated) year with the counterfactual value.
    pub equivalent_year: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CostReport {
    pub reference_year: i32,
    pub entries: Vec<CostEntry>,
}

/// Compares a counterfactual path with observed data at `reference_year`.
pub fn cost_report(
    observed: &SampleData,
    counterfactual: &SimulationPath,
    reference_year: i32,
    log_vars: &[bool],
) -> Result<CostReport> {
    let n = observed.n();
    if log_vars.len() != n || counterfactual.levels.ncols() != n {
        return Err(Error::DimensionMismatch(format!("{n} variables expected")));
    }
    let ro = observed.years.iter().position(|&y| y == reference_year).ok_or(Error::YearOutOfRange(reference_year))?;
    let rc = counterfactual
        .years
        .iter()
        .position(|&y| y == reference_year)
        .ok_or(Error::YearOutOfRange(reference_year))?;
    let entries = (0..n)
        .map(|j| {
            let obs = observed.endog[(ro, j)];
            let cf = counterfactual.levels[(rc, j)];
            let change = if log_vars[j] { 100.0 * (exp(cf - obs) - 1.0) } else { cf - obs };
            let series: Vec<f64> = (0..=ro).map(|i| observed.endog[(i, j)]).collect();
            CostEntry {
                name: observed.names[j].clone(),
                observed: obs,
                counterfactual: cf,
                change,
                percent: log_vars[j],
                equivalent_year: equivalent_year(&observed.years[..=ro], &series, cf),
            }
        })
        .collect();
    Ok(CostReport { reference_year, entries })
}

fn equivalent_year(years: &[i32], values: &[f64], target: f64) -> Option<f64> {
    let last = values.len().checked_sub(1)?;
    if values[last] == target {
        return Some(years[last] as f64);
    }
    for i in (0..last).rev() {
        let (a, b) = (values[i], values[i + 1]);
        if (a - target) * (b - target) <= 0.0 && a != b {
            let w = (target - a) / (b - a);
            return Some(years[i] as f64 + w * (years[i + 1] - years[i]) as f64);
        }
        if a == target {
            return Some(years[i] as f64);
        }
    }
    None
}
