use alloc::vec::Vec;
use libm::log;
use nalgebra::{DMatrix, DVector};

use super::{concentrate_data, rrr_solve, Concentrated, CvarEstimate, CvarSpec, Normalization, SampleData};
use crate::error::{Error, Result};
use crate::frame::TimeFrame;
use crate::linalg;

const LN_2PI: f64 = 1.837_877_066_409_345_5;

/// Maximum likelihood fit at the rank fixed in `spec`.
pub fn fit(frame: &TimeFrame, spec: &CvarSpec) -> Result<CvarEstimate> {
    fit_data(&SampleData::from_frame(frame, spec)?, spec)
}

pub fn fit_with_rank(frame: &TimeFrame, spec: &CvarSpec, rank: usize) -> Result<CvarEstimate> {
    fit(frame, &spec.clone().with_rank(rank))
}

pub fn fit_data(data: &SampleData, spec: &CvarSpec) -> Result<CvarEstimate> {
    let r = spec.fixed_rank()?;
    let n = data.n();
    if r > n {
        return Err(Error::InvalidSpec(alloc::format!("rank {r} exceeds {n} variables")));
    }
    let conc = concentrate_data(data, spec)?;
    let sol = rrr_solve(&conc.r0, &conc.r1)?;
    let beta = sol.eigenvectors.columns(0, r).into_owned();
    let alpha = if r == 0 {
        DMatrix::zeros(n, 0)
    } else {
        let bsb = beta.transpose() * &sol.s11 * &beta;
        &sol.s01 * &beta * linalg::inverse(&bsb, "beta' S11 beta")?
    };
    let (alpha, beta) = normalize(alpha, beta, &spec.normalization, n)?;
    let eigenvalues = DVector::from_iterator(n, sol.eigenvalues.iter().take(n).copied());
    assemble(data, spec, &conc, alpha, beta, eigenvalues)
}

/// Rescales `(alpha, beta)` so that `alpha beta'` is unchanged and `beta`
/// satisfies the normalization.
pub(crate) fn normalize(
    alpha: DMatrix<f64>,
    beta: DMatrix<f64>,
    norm: &Normalization,
    n: usize,
) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    let r = beta.ncols();
    if r == 0 {
        return Ok((alpha, beta));
    }
    match norm {
        Normalization::IdentityBlock => {
            let block = beta.rows(0, r).into_owned();
            if linalg::relative_min_singular(&block) < 1e-12 {
                return Err(Error::NormalizationSingular);
            }
            let inv = block.try_inverse().ok_or(Error::NormalizationSingular)?;
            let b = &beta * &inv;
            let a = alpha * inv.try_inverse().ok_or(Error::NormalizationSingular)?.transpose();
            Ok((a, b))
        }
        Normalization::Variables(vars) => {
            if vars.len() != r || vars.iter().any(|v| *v >= n) {
                return Err(Error::InvalidSpec("one normalization variable per vector".into()));
            }
            let (mut a, mut b) = (alpha, beta);
            for (j, &v) in vars.iter().enumerate() {
                let pivot = b[(v, j)];
                if pivot.abs() <= 1e-12 * b.column(j).norm() {
                    return Err(Error::NormalizationSingular);
                }
                b.column_mut(j).unscale_mut(pivot);
                a.column_mut(j).scale_mut(pivot);
            }
            Ok((a, b))
        }
    }
}

/// Completes an estimate given `alpha` and `beta*`: short-run coefficients by
/// OLS, residuals, covariance and log-likelihood.
pub(crate) fn assemble(
    data: &SampleData,
    spec: &CvarSpec,
    conc: &Concentrated,
    alpha: DMatrix<f64>,
    beta_star: DMatrix<f64>,
    eigenvalues: DVector<f64>,
) -> Result<CvarEstimate> {
    let n = data.n();
    let k = spec.lag_order;
    let pi = &alpha * beta_star.transpose();
    let y = &conc.z0 - &conc.z1 * pi.transpose();
    let psi = linalg::ols(&conc.z2, &y)?;
    let residuals = &y - &conc.z2 * &psi;
    let t_eff = residuals.nrows();
    let omega = linalg::symmetrize(&linalg::moment(&residuals, &residuals));
    let log_det = linalg::log_det_spd(&omega, "Omega")?;
    let loglik = -0.5 * t_eff as f64 * (n as f64 * LN_2PI + log_det + n as f64);

    let mut gammas = Vec::with_capacity(k.saturating_sub(1));
    let mut row = 0;
    for _ in 1..k {
        gammas.push(psi.rows(row, n).transpose());
        row += n;
    }
    let q_u = spec.deterministic.unrestricted_count();
    let det_coef = psi.rows(row, q_u).transpose();
    row += q_u;
    let exog_coef = psi.rows(row, spec.exog_columns()).transpose();

    Ok(CvarEstimate {
        alpha,
        beta_star,
        gammas,
        det_coef,
        exog_coef,
        omega,
        residuals,
        eigenvalues,
        loglik,
        spec: spec.clone(),
        names: data.names.clone(),
        years: conc.years.clone(),
        origin: data.origin,
        start: conc.start,
    })
}

pub(crate) fn loglik_from_omega(omega: &DMatrix<f64>, t_eff: usize) -> Result<f64> {
    let n = omega.nrows();
    let log_det = linalg::log_det_spd(omega, "Omega")?;
    Ok(-0.5 * t_eff as f64 * (n as f64 * LN_2PI + log_det + n as f64))
}

#[allow(dead_code)]
pub(crate) fn concentrated_loglik(s00: &DMatrix<f64>, eigenvalues: &[f64], t_eff: usize) -> Result<f64> {
    let n = s00.nrows();
    let ld = linalg::log_det_spd(s00, "S00")? + eigenvalues.iter().map(|l| log(1.0 - l)).sum::<f64>();
    Ok(-0.5 * t_eff as f64 * (n as f64 * LN_2PI + ld + n as f64))
}
