use alloc::string::String;
use alloc::vec::Vec;
use libm::log;

use super::{concentrate_data, fit_data, rrr_solve, CvarSpec, SampleData};
use crate::deterministic::DetCase;
use crate::dynamics::{Dynamics, GaussianShocks};
use crate::error::{Error, Result};
use crate::frame::TimeFrame;
use crate::replicate::{salted, with_redraws, Runner};

use super::tables;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceMethod {
    /// Embedded quantiles of the limiting distribution (standard cases only).
    Asymptotic,
    /// Parametric bootstrap under each null rank with Gaussian shocks.
    Bootstrap { replications: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow {
    /// Null hypothesis rank `r0`.
    pub rank: usize,
    pub statistic: f64,
    pub p_value: f64,
    pub critical_95: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceTest {
    pub rows: Vec<TraceRow>,
    pub eigenvalues: Vec<f64>,
    pub t_eff: usize,
    pub case: Option<DetCase>,
    pub method: TraceMethod,
    /// Exogenous regressors were present: p-values carry no partial-system correction.
    pub exogenous_present: bool,
}

impl TraceTest {
    /// Smallest `r0` not rejected at `level`, or `n` when all are rejected.
    pub fn selected_rank(&self, level: f64) -> usize {
        self.rows
            .iter()
            .find(|r| r.p_value >= level)
            .map(|r| r.rank)
            .unwrap_or(self.rows.len())
    }

    pub fn notes(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.exogenous_present {
            out.push(String::from(
                "exogenous regressors present: p-values are not corrected for the partial system",
            ));
        }
        out
    }
}

/// `-T sum_{i > r0} ln(1 - lambda_i)` for `r0 = 0 .. n-1`.
pub fn trace_statistics(eigenvalues: &[f64], t_eff: usize) -> Vec<f64> {
    let n = eigenvalues.len();
    (0..n)
        .map(|r0| {
            -(t_eff as f64) * eigenvalues[r0..].iter().map(|l| log(1.0 - l)).sum::<f64>()
        })
        .collect()
}

pub fn trace_test<R: Runner>(
    frame: &TimeFrame,
    spec: &CvarSpec,
    method: TraceMethod,
    runner: &R,
) -> Result<TraceTest> {
    trace_test_data(&SampleData::from_frame(frame, spec)?, spec, method, runner)
}

pub fn trace_test_data<R: Runner>(
    data: &SampleData,
    spec: &CvarSpec,
    method: TraceMethod,
    runner: &R,
) -> Result<TraceTest> {
    let n = data.n();
    let conc = concentrate_data(data, spec)?;
    let sol = rrr_solve(&conc.r0, &conc.r1)?;
    let eigenvalues: Vec<f64> = sol.eigenvalues.iter().take(n).copied().collect();
    let t_eff = conc.t_eff();
    let stats = trace_statistics(&eigenvalues, t_eff);
    let case = spec.deterministic.standard_case(data.origin);
    let rows = match method {
        TraceMethod::Asymptotic => {
            let case = case.ok_or(Error::UseBootstrap)?;
            stats
                .iter()
                .enumerate()
                .map(|(r0, &s)| {
                    let d = n - r0;
                    Ok(TraceRow {
                        rank: r0,
                        statistic: s,
                        p_value: tables::p_value(case, d, s)?,
                        critical_95: Some(tables::quantile(case, d, 0.95)?),
                    })
                })
                .collect::<Result<Vec<_>>>()?
        }
        TraceMethod::Bootstrap { replications, seed } => {
            if replications < 99 {
                return Err(Error::InvalidSpec("bootstrap trace test needs B >= 99".into()));
            }
            let mut rows = Vec::with_capacity(n);
            for (r0, &s) in stats.iter().enumerate() {
                let draws = bootstrap_null(data, spec, r0, replications, seed, runner)?;
                let exceed = draws.iter().filter(|d| **d >= s).count();
                let mut sorted = draws.clone();
                sorted.sort_by(f64::total_cmp);
                let idx = ((0.95 * sorted.len() as f64) as usize).min(sorted.len() - 1);
                rows.push(TraceRow {
                    rank: r0,
                    statistic: s,
                    p_value: (1 + exceed) as f64 / (draws.len() + 1) as f64,
                    critical_95: Some(sorted[idx]),
                });
            }
            rows
        }
    };
    Ok(TraceTest {
        rows,
        eigenvalues,
        t_eff,
        case,
        method,
        exogenous_present: !spec.exogenous.is_empty(),
    })
}

fn bootstrap_null<R: Runner>(
    data: &SampleData,
    spec: &CvarSpec,
    r0: usize,
    replications: usize,
    seed: u64,
    runner: &R,
) -> Result<Vec<f64>> {
    let null_spec = spec.clone().with_rank(r0);
    let est = fit_data(data, &null_spec)?;
    let dynamics = Dynamics::new(&est);
    let shocks = GaussianShocks::new(&est.omega)?;
    let stream = salted(seed, 0x7472_6163_6500 + r0 as u64);
    let n = data.n();
    let out: Vec<Result<(f64, usize)>> = runner.map(replications, |b| {
        with_redraws(stream, b, replications, |rng| {
            let x = dynamics.simulate(&data.endog, &data.years, &data.exog, est.start, |_| shocks.draw(rng));
            let conc = concentrate_data(&data.with_endog(x), &null_spec)?;
            let sol = rrr_solve(&conc.r0, &conc.r1)?;
            let eig: Vec<f64> = sol.eigenvalues.iter().take(n).copied().collect();
            Ok(trace_statistics(&eig, conc.t_eff())[r0])
        })
    });
    out.into_iter().map(|r| r.map(|(s, _)| s)).collect()
}
