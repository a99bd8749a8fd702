//! Parameter-stability statistic for the cointegration vectors and residual
//! checks.

use alloc::format;
use alloc::vec::Vec;
use libm::{ceil, sqrt};
use nalgebra::{DMatrix, DVector};

use crate::dynamics::{Dynamics, GaussianShocks};
use crate::error::{Error, Result};
use crate::estimator::{concentrate_data, CvarEstimate, Refit, SampleData};
use crate::linalg;
use crate::replicate::{salted, with_redraws, Runner};
use crate::special::chi2_sf;

#[derive(Debug, Clone, PartialEq)]
pub struct NyblomResult {
    /// Year of each point of the path.
    pub years: Vec<i32>,
    /// `L_T^(t)` for `t = t_min .. T`.
    pub path: Vec<f64>,
    pub sup: f64,
    /// `L_T^(T) / sup_t L_T^(t)`; zero up to rounding at the ML estimate.
    pub final_relative: f64,
    /// 95% reference value when one was supplied or bootstrapped.
    pub reference: Option<f64>,
    pub exceeds: Option<bool>,
    /// Orthonormal complement of `beta*` in the `(n + q_r)`-space.
    pub basis: DMatrix<f64>,
    /// `alpha' Omega^{-1} alpha`.
    pub v: DMatrix<f64>,
    /// `T^{-1} N' S11 N`.
    pub m: DMatrix<f64>,
}

impl NyblomResult {
    pub fn with_reference(mut self, reference: f64) -> Self {
        self.reference = Some(reference);
        self.exceeds = Some(self.sup > reference);
        self
    }
}

/// Fluctuation statistic of the cumulated scores for `beta*`, evaluated at
/// the full-sample estimate (no recursive estimation).
pub fn nyblom_sequence(data: &SampleData, est: &CvarEstimate, t_min_fraction: f64) -> Result<NyblomResult> {
    nyblom_with_basis(data, est, t_min_fraction, None)
}

pub(crate) fn nyblom_with_basis(
    data: &SampleData,
    est: &CvarEstimate,
    t_min_fraction: f64,
    basis: Option<DMatrix<f64>>,
) -> Result<NyblomResult> {
    if !(t_min_fraction > 0.0 && t_min_fraction < 1.0) {
        return Err(Error::InvalidSpec("t_min_fraction must lie in (0, 1)".into()));
    }
    if est.rank() == 0 {
        return Err(Error::InvalidSpec("stability test needs rank >= 1".into()));
    }
    let conc = concentrate_data(data, &est.spec)?;
    let t = conc.t_eff();
    let n1 = conc.r1.ncols();
    let alpha = &est.alpha;
    let beta = &est.beta_star;
    if beta.nrows() != n1 {
        return Err(Error::DimensionMismatch("estimate does not match the data".into()));
    }
    let omega_inv = linalg::spd_inverse(&est.omega, "Omega")?;
    let oa = &omega_inv * alpha;
    let v = linalg::symmetrize(&(alpha.transpose() * &oa));
    let v_inv = linalg::spd_inverse(&v, "V")?;
    let basis = match basis {
        Some(b) => b,
        None => linalg::orth_complement(beta)?,
    };
    let s11 = linalg::moment(&conc.r1, &conc.r1);
    let m = linalg::symmetrize(&(basis.transpose() * &s11 * &basis / t as f64));
    let m_inv = linalg::spd_inverse(&m, "M")?;
    let t_min = (ceil(t_min_fraction * t as f64) as usize).max(1);
    // Per-observation score of beta*: R1_s (R0_s - alpha beta*' R1_s)' Omega^{-1} alpha.
    let resid = &conc.r0 - &conc.r1 * beta * alpha.transpose();
    let mut cum = DMatrix::zeros(n1, alpha.ncols());
    let mut years = Vec::with_capacity(t - t_min + 1);
    let mut path = Vec::with_capacity(t - t_min + 1);
    let scaled_oa = &oa;
    for s in 0..t {
        let u = resid.row(s) * scaled_oa;
        cum += conc.r1.row(s).transpose() * u;
        if s + 1 >= t_min {
            // (t/T)^2 with S^(t) = N' cum / t reduces to N' cum / T.
            let st = basis.transpose() * &cum / t as f64;
            let l = (&v_inv * st.transpose() * &m_inv * &st).trace();
            years.push(conc.years[s]);
            path.push(l.max(0.0));
        }
    }
    let sup = path.iter().copied().fold(0.0, f64::max);
    let last = *path.last().unwrap_or(&0.0);
    Ok(NyblomResult {
        years,
        final_relative: if sup > 0.0 { last / sup } else { 0.0 },
        path,
        sup,
        reference: None,
        exceeds: None,
        basis,
        v,
        m,
    })
}

/// 95% quantile of `sup_t L_T^(t)` under a parametric bootstrap of the
/// fitted model with Gaussian shocks, re-estimating every replicate.
pub fn nyblom_reference<R: Runner>(
    est: &CvarEstimate,
    data: &SampleData,
    refit: &Refit,
    replications: usize,
    seed: u64,
    t_min_fraction: f64,
    runner: &R,
) -> Result<f64> {
    if replications < 19 {
        return Err(Error::InvalidSpec("stability reference needs B >= 19".into()));
    }
    let dynamics = Dynamics::new(est);
    let shocks = GaussianShocks::new(&est.omega)?;
    let stream = salted(seed, 0x6e79_626c);
    let sups: Vec<Result<(f64, usize)>> = runner.map(replications, |b| {
        with_redraws(stream, b, replications, |rng| {
            let x = dynamics.simulate(&data.endog, &data.years, &data.exog, est.start, |_| shocks.draw(rng));
            let sample = data.with_endog(x);
            let fitted = refit.fit(&sample, &est.spec)?;
            Ok(nyblom_sequence(&sample, &fitted, t_min_fraction)?.sup)
        })
    });
    let mut sups = sups.into_iter().map(|r| r.map(|(s, _)| s)).collect::<Result<Vec<_>>>()?;
    sups.sort_by(f64::total_cmp);
    let h = 0.95 * (sups.len() - 1) as f64;
    let lo = h as usize;
    let hi = (lo + 1).min(sups.len() - 1);
    Ok(sups[lo] + (h - lo as f64) * (sups[hi] - sups[lo]))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    /// Autocorrelations, `max_lag x n`.
    pub acf: DMatrix<f64>,
    /// `2 / sqrt(T)`.
    pub acf_bound: f64,
    pub portmanteau: f64,
    pub df: usize,
    pub p_value: f64,
    pub sd_first_half: DVector<f64>,
    pub sd_second_half: DVector<f64>,
}

/// Checks on the residuals of a fitted model; the portmanteau degrees of
/// freedom are reduced by the `k - 1` estimated lag matrices.
pub fn residual_diagnostics(est: &CvarEstimate, max_lag: usize) -> Result<ResidualReport> {
    residual_report(&est.residuals, max_lag, est.lag_order().saturating_sub(1))
}

/// `Q = T^2 sum_h tr(C_h' C_0^{-1} C_h C_0^{-1}) / (T - h)` with
/// `n^2 (max_lag - fitted_lags)` degrees of freedom.
pub fn residual_report(resid: &DMatrix<f64>, max_lag: usize, fitted_lags: usize) -> Result<ResidualReport> {
    let (t, n) = resid.shape();
    if max_lag == 0 || max_lag >= t {
        return Err(Error::MaxLagTooLarge { max_lag, t_eff: t });
    }
    if max_lag <= fitted_lags {
        return Err(Error::InvalidSpec(format!("max lag must exceed {fitted_lags}")));
    }
    let mean = resid.row_mean();
    let e = DMatrix::from_fn(t, n, |i, j| resid[(i, j)] - mean[j]);
    let lagged = |h: usize| -> DMatrix<f64> {
        e.rows(h, t - h).transpose() * e.rows(0, t - h) / t as f64
    };
    let c0 = lagged(0);
    if c0.diagonal().iter().any(|v| v.is_nan() || *v <= 1e-300) {
        return Err(Error::DegenerateResiduals);
    }
    let c0_inv = linalg::spd_inverse(&c0, "residual covariance").map_err(|_| Error::DegenerateResiduals)?;
    let sd = c0.diagonal().map(sqrt);
    let mut acf = DMatrix::zeros(max_lag, n);
    let mut q = 0.0;
    for h in 1..=max_lag {
        let ch = lagged(h);
        for j in 0..n {
            acf[(h - 1, j)] = ch[(j, j)] / (sd[j] * sd[j]);
        }
        q += (ch.transpose() * &c0_inv * &ch * &c0_inv).trace() / (t - h) as f64;
    }
    q *= (t * t) as f64;
    let df = n * n * (max_lag - fitted_lags);
    let half = t / 2;
    let half_sd = |rows: core::ops::Range<usize>| {
        let len = rows.len() as f64;
        DVector::from_fn(n, |j, _| {
            let col: Vec<f64> = rows.clone().map(|i| resid[(i, j)]).collect();
            let m = col.iter().sum::<f64>() / len;
            sqrt(col.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / (len - 1.0))
        })
    };
    Ok(ResidualReport {
        acf,
        acf_bound: 2.0 / sqrt(t as f64),
        portmanteau: q,
        df,
        p_value: chi2_sf(q, df as f64),
        sd_first_half: half_sd(0..half),
        sd_second_half: half_sd(half..t),
    })
}
