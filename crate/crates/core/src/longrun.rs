//! Long-run impact matrix of the moving-average representation and the
//! quantities derived from it.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use libm::sqrt;
use nalgebra::{DMatrix, DVector};

use crate::dynamics::{residual_replicate, Dynamics, ResidualPool};
use crate::error::{Error, Result};
use crate::estimator::{CvarEstimate, Refit, SampleData};
use crate::linalg;
use crate::replicate::{salted, with_redraws, Runner};

#[derive(Debug, Clone, PartialEq)]
pub struct LongRunRep {
    /// `beta_perp (alpha_perp' Gamma beta_perp)^{-1} alpha_perp'`.
    pub c: DMatrix<f64>,
    pub alpha_perp: DMatrix<f64>,
    pub beta_perp: DMatrix<f64>,
    /// `I - sum_i Gamma_i`.
    pub gamma_total: DMatrix<f64>,
    /// Maps `mu` to the attractor offset of the long-run expectation; equals
    /// `alpha (beta' alpha)^{-1}` for a VAR(1).
    pub abar_term: Option<DMatrix<f64>>,
    pub c_tstats: Option<DMatrix<f64>>,
}

/// Long-run impact matrix of a fitted model.
pub fn compute_c(est: &CvarEstimate) -> Result<LongRunRep> {
    longrun_from_parts(&est.alpha, &est.beta(), &est.gammas)
}

pub fn longrun_from_parts(
    alpha: &DMatrix<f64>,
    beta: &DMatrix<f64>,
    gammas: &[DMatrix<f64>],
) -> Result<LongRunRep> {
    let n = alpha.nrows();
    let r = alpha.ncols();
    if beta.nrows() != n || beta.ncols() != r {
        return Err(Error::DimensionMismatch(format!(
            "alpha is {n}x{r}, beta is {}x{}",
            beta.nrows(),
            beta.ncols()
        )));
    }
    let mut gamma_total = DMatrix::identity(n, n);
    for g in gammas {
        gamma_total -= g;
    }
    let alpha_perp = linalg::orth_complement(alpha)?;
    let beta_perp = linalg::orth_complement(beta)?;
    let c = if r == n {
        DMatrix::zeros(n, n)
    } else {
        let core = alpha_perp.transpose() * &gamma_total * &beta_perp;
        if linalg::relative_min_singular(&core) < 1e-12 {
            return Err(Error::I1ConditionFails);
        }
        let inv = core.try_inverse().ok_or(Error::I1ConditionFails)?;
        &beta_perp * inv * alpha_perp.transpose()
    };
    let scale = 1.0 + linalg::max_abs(&c) * (1.0 + linalg::max_abs(alpha) + linalg::max_abs(beta));
    let resid = linalg::max_abs(&(beta.transpose() * &c)).max(linalg::max_abs(&(&c * alpha)));
    if resid > 1e-10 * scale {
        return Err(Error::I1ConditionFails);
    }
    let abar_term = attractor_map(&alpha_perp, &gamma_total, beta);
    Ok(LongRunRep { c, alpha_perp, beta_perp, gamma_total, abar_term, c_tstats: None })
}

/// `W (beta' W)^{-1}` with `W` spanning the kernel of `alpha_perp' Gamma`.
fn attractor_map(alpha_perp: &DMatrix<f64>, gamma: &DMatrix<f64>, beta: &DMatrix<f64>) -> Option<DMatrix<f64>> {
    let n = gamma.nrows();
    let r = beta.ncols();
    if r == 0 {
        return Some(DMatrix::zeros(n, 0));
    }
    let w = linalg::orth_complement(&(gamma.transpose() * alpha_perp)).ok()?;
    if w.ncols() != r {
        return None;
    }
    let bw = beta.transpose() * &w;
    if linalg::relative_min_singular(&bw) < 1e-12 {
        return None;
    }
    Some(w * bw.try_inverse()?)
}

/// Limit of the zero-shock path started from a history at rest at `x0`:
/// `C Gamma x0 + W (beta' W)^{-1} mu`, which is `C x0 + alpha (beta' alpha)^{-1} mu`
/// for a VAR(1).
pub fn longrun_expectation(rep: &LongRunRep, x0: &DVector<f64>, mu: &DVector<f64>) -> Result<DVector<f64>> {
    let abar = rep.abar_term.as_ref().ok_or(Error::SingularMatrix("beta' alpha"))?;
    if abar.ncols() != mu.len() {
        return Err(Error::DimensionMismatch(format!("mu has {} entries, rank is {}", mu.len(), abar.ncols())));
    }
    Ok(&rep.c * &rep.gamma_total * x0 + abar * mu)
}

/// Bootstrap draws of `C` and `beta*` from recursive residual resampling.
#[derive(Debug, Clone, PartialEq)]
pub struct LongRunBootstrap {
    pub c_draws: Vec<DMatrix<f64>>,
    pub beta_draws: Vec<DMatrix<f64>>,
    /// Replicates redrawn because a refit failed or broke the I(1) condition.
    pub redraws: usize,
}

impl LongRunBootstrap {
    /// Entrywise standard deviation of the `C` draws.
    pub fn c_sd(&self) -> DMatrix<f64> {
        entry_sd(&self.c_draws)
    }

    /// `c / sd(C*)` entrywise.
    pub fn tstats(&self, c: &DMatrix<f64>) -> DMatrix<f64> {
        tstats(c, &self.c_sd())
    }
}

fn entry_sd(draws: &[DMatrix<f64>]) -> DMatrix<f64> {
    let (r, c) = draws[0].shape();
    let b = draws.len() as f64;
    DMatrix::from_fn(r, c, |i, j| {
        let mean = draws.iter().map(|d| d[(i, j)]).sum::<f64>() / b;
        let var = draws.iter().map(|d| (d[(i, j)] - mean) * (d[(i, j)] - mean)).sum::<f64>() / (b - 1.0);
        sqrt(var)
    })
}

pub fn longrun_bootstrap<R: Runner>(
    est: &CvarEstimate,
    data: &SampleData,
    refit: &Refit,
    replications: usize,
    seed: u64,
    runner: &R,
) -> Result<LongRunBootstrap> {
    if replications < 2 {
        return Err(Error::InvalidSpec("bootstrap needs at least two replications".into()));
    }
    let dynamics = Dynamics::new(est);
    let pool = ResidualPool::centered(&est.residuals);
    let stream = salted(seed, 0x6c6f_6e67);
    let out: Vec<Result<((DMatrix<f64>, DMatrix<f64>), usize)>> = runner.map(replications, |b| {
        with_redraws(stream, b, replications, |rng| {
            let sample = residual_replicate(&dynamics, data, &pool, rng);
            let fitted = refit.fit(&sample, &est.spec)?;
            Ok((compute_c(&fitted)?.c, fitted.beta_star))
        })
    });
    let mut c_draws = Vec::with_capacity(replications);
    let mut beta_draws = Vec::with_capacity(replications);
    let mut redraws = 0;
    for item in out {
        let ((c, beta), a) = item?;
        c_draws.push(c);
        beta_draws.push(beta);
        redraws += a;
    }
    Ok(LongRunBootstrap { c_draws, beta_draws, redraws })
}

/// `C_ij / sd(C*_ij)` over a residual bootstrap with `replications >= 199`.
pub fn c_tstats<R: Runner>(
    est: &CvarEstimate,
    data: &SampleData,
    refit: &Refit,
    replications: usize,
    seed: u64,
    runner: &R,
) -> Result<DMatrix<f64>> {
    if replications < 199 {
        return Err(Error::InvalidSpec("C t-statistics need B >= 199".into()));
    }
    let rep = compute_c(est)?;
    let boot = longrun_bootstrap(est, data, refit, replications, seed, runner)?;
    Ok(tstats(&rep.c, &boot.c_sd()))
}

fn tstats(value: &DMatrix<f64>, sd: &DMatrix<f64>) -> DMatrix<f64> {
    value.zip_map(sd, |v, s| if s > 0.0 { v / s } else if v == 0.0 { 0.0 } else { f64::INFINITY.copysign(v) })
}

/// Column roles and scale constants for the literature-comparison indicators.
#[derive(Debug, Clone, PartialEq)]
pub struct IndicatorMap {
    pub y: usize,
    pub c: usize,
    pub m: usize,
    pub h: usize,
    /// Cointegration vector carrying the temperature damage on output.
    pub damage_vector: usize,
    /// Cointegration vector carrying the temperature response to CO2.
    pub climate_vector: usize,
    /// Change in log CO2 concentration used for the attribution.
    pub delta_m: f64,
    /// Atmospheric carbon stock in GtC, so that 1% equals `stock / 100` GtC.
    pub stock_gtc: f64,
}

impl IndicatorMap {
    pub fn from_names(names: &[String], y: &str, c: &str, m: &str, h: &str) -> Result<Self> {
        let find = |v: &str| {
            names
                .iter()
                .position(|n| n == v)
                .ok_or_else(|| Error::NameMapIncomplete(format!("no column `{v}` among {names:?}")))
        };
        Ok(Self {
            y: find(y)?,
            c: find(c)?,
            m: find(m)?,
            h: find(h)?,
            damage_vector: 0,
            climate_vector: 1,
            delta_m: 0.33,
            stock_gtc: 800.0,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedIndicators {
    /// `-beta_h / beta_y` in the damage vector.
    pub xi: f64,
    pub xi_se: f64,
    /// `dh/dm = -beta_m / beta_h` in the climate vector.
    pub dh_dm: f64,
    pub dh_dm_se: f64,
    /// `dh/dm * delta_m`.
    pub dt_200y: f64,
    pub dt_200y_se: f64,
    /// Long-run elasticity of output to CO2, read from the `C[y, m]` cell.
    pub elasticity_direct: f64,
    /// Same elasticity per unit of realized long-run CO2 change,
    /// `C[y, m] / C[m, m]`.
    pub elasticity_cumulative: f64,
    /// Percent output loss per GtC from the direct cell.
    pub gamma_pct: f64,
    pub gamma_pct_se: f64,
    /// Percent output loss per GtC from the cumulative convention.
    pub gamma_pct_cumulative: f64,
}

struct Point {
    xi: f64,
    dh_dm: f64,
    el_direct: f64,
    el_cum: f64,
}

fn point(map: &IndicatorMap, n: usize, beta: &DMatrix<f64>, c: &DMatrix<f64>) -> Result<Point> {
    let r = beta.ncols();
    if map.damage_vector >= r || map.climate_vector >= r {
        return Err(Error::NameMapIncomplete(format!("indicator vectors exceed rank {r}")));
    }
    if [map.y, map.c, map.m, map.h].iter().any(|&v| v >= n) {
        return Err(Error::NameMapIncomplete("indicator column out of range".into()));
    }
    let d = map.damage_vector;
    let k = map.climate_vector;
    Ok(Point {
        xi: -beta[(map.h, d)] / beta[(map.y, d)],
        dh_dm: -beta[(map.m, k)] / beta[(map.h, k)],
        el_direct: c[(map.y, map.m)],
        el_cum: c[(map.y, map.m)] / c[(map.m, map.m)],
    })
}

/// Indicators from the point estimates; standard errors from `boot` when given.
pub fn derived_indicators(
    est: &CvarEstimate,
    rep: &LongRunRep,
    map: &IndicatorMap,
    boot: Option<&LongRunBootstrap>,
) -> Result<DerivedIndicators> {
    let n = est.n();
    let p = point(map, n, &est.beta_star, &rep.c)?;
    let per_gtc = 100.0 / map.stock_gtc;
    let (xi_se, dh_se, g_se) = match boot {
        Some(b) if b.c_draws.len() > 1 => {
            let pts = b
                .c_draws
                .iter()
                .zip(&b.beta_draws)
                .map(|(c, beta)| point(map, n, beta, c))
                .collect::<Result<Vec<_>>>()?;
            let sd = |f: &dyn Fn(&Point) -> f64| {
                let v: Vec<f64> = pts.iter().map(f).collect();
                let m = v.iter().sum::<f64>() / v.len() as f64;
                sqrt(v.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (v.len() - 1) as f64)
            };
            (sd(&|q| q.xi), sd(&|q| q.dh_dm), sd(&|q| q.el_direct) * per_gtc)
        }
        _ => (0.0, 0.0, 0.0),
    };
    Ok(DerivedIndicators {
        xi: p.xi,
        xi_se,
        dh_dm: p.dh_dm,
        dh_dm_se: dh_se,
        dt_200y: p.dh_dm * map.delta_m,
        dt_200y_se: dh_se * map.delta_m,
        elasticity_direct: p.el_direct,
        elasticity_cumulative: p.el_cum,
        gamma_pct: -p.el_direct * per_gtc,
        gamma_pct_se: g_se,
        gamma_pct_cumulative: -p.el_cum * per_gtc,
    })
}
