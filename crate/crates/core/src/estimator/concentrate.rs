use alloc::vec::Vec;
use nalgebra::DMatrix;

use super::{CvarSpec, SampleData};
use crate::error::{Error, Result};
use crate::frame::TimeFrame;
use crate::linalg;

/// Regression blocks and concentrated residuals over the effective sample.
#[derive(Debug, Clone, PartialEq)]
pub struct Concentrated {
    /// `dX_t`.
    pub z0: DMatrix<f64>,
    /// `(X_{t-1}, D_r(t))`.
    pub z1: DMatrix<f64>,
    /// Lagged differences, unrestricted deterministics, exogenous differences.
    pub z2: DMatrix<f64>,
    pub r0: DMatrix<f64>,
    pub r1: DMatrix<f64>,
    pub years: Vec<i32>,
    pub start: usize,
}

impl Concentrated {
    pub fn t_eff(&self) -> usize {
        self.z0.nrows()
    }

    pub fn n(&self) -> usize {
        self.z0.ncols()
    }
}

/// Concentrates the short-run terms out of `dX_t` and `(X_{t-1}, D_r(t))`.
pub fn concentrate(frame: &TimeFrame, spec: &CvarSpec) -> Result<Concentrated> {
    concentrate_data(&SampleData::from_frame(frame, spec)?, spec)
}

pub fn concentrate_data(data: &SampleData, spec: &CvarSpec) -> Result<Concentrated> {
    if spec.lag_order == 0 {
        return Err(Error::InvalidSpec("lag order must be at least 1".into()));
    }
    let det = &spec.deterministic;
    det.validate(&data.years)?;
    let n = data.n();
    let k = spec.lag_order;
    let t_all = data.len();
    let start = spec.first_row();
    let q_r = det.restricted_count();
    let q_u = det.unrestricted_count();
    let q_x = spec.exog_columns();
    let required = n * k + q_r + q_u + q_x;
    let t_eff = t_all.saturating_sub(start);
    if t_eff <= required {
        return Err(Error::InsufficientObservations { available: t_eff, required });
    }
    let x = &data.endog;
    let q2 = n * (k - 1) + q_u + q_x;
    let mut z0 = DMatrix::zeros(t_eff, n);
    let mut z1 = DMatrix::zeros(t_eff, n + q_r);
    let mut z2 = DMatrix::zeros(t_eff, q2);
    for row in 0..t_eff {
        let t = start + row;
        let year = data.years[t];
        for j in 0..n {
            z0[(row, j)] = x[(t, j)] - x[(t - 1, j)];
            z1[(row, j)] = x[(t - 1, j)];
        }
        for (j, v) in det.restricted_at(year, data.origin).into_iter().enumerate() {
            z1[(row, n + j)] = v;
        }
        let mut c = 0;
        for i in 1..k {
            for j in 0..n {
                z2[(row, c)] = x[(t - i, j)] - x[(t - i - 1, j)];
                c += 1;
            }
        }
        for v in det.unrestricted_at(year, data.origin) {
            z2[(row, c)] = v;
            c += 1;
        }
        for &l in &spec.exog_lags {
            for j in 0..data.exog.ncols() {
                z2[(row, c)] = data.exog[(t - l, j)] - data.exog[(t - l - 1, j)];
                c += 1;
            }
        }
    }
    let r0 = linalg::residualize(&z0, &z2)?;
    let r1 = linalg::residualize(&z1, &z2)?;
    Ok(Concentrated {
        z0,
        z1,
        z2,
        r0,
        r1,
        years: data.years[start..].to_vec(),
        start,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deterministic::DeterministicSpec;
    use alloc::string::String;
    use alloc::vec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, StandardNormal};

    fn random_walks(t: usize, n: usize, seed: u64) -> SampleData {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut x = DMatrix::zeros(t, n);
        for i in 1..t {
            for j in 0..n {
                let e: f64 = StandardNormal.sample(&mut rng);
                x[(i, j)] = x[(i - 1, j)] + e;
            }
        }
        SampleData {
            years: (0..t as i32).collect(),
            origin: 0,
            endog: x,
            exog: DMatrix::zeros(t, 0),
            names: (0..n).map(|j| alloc::format!("x{j}")).collect::<Vec<String>>(),
            exog_names: vec![],
        }
    }

    #[test]
    fn k1_without_terms_is_identity_projection() {
        let data = random_walks(50, 2, 1);
        let c = concentrate_data(&data, &CvarSpec::new(1, 1)).unwrap();
        assert_eq!(c.r0, c.z0);
        assert_eq!(c.r1, c.z1);
        for row in 0..c.t_eff() {
            for j in 0..2 {
                let t = row + 1;
                assert_eq!(c.r1[(row, j)], data.endog[(t - 1, j)]);
                assert_eq!(c.r0[(row, j)], data.endog[(t, j)] - data.endog[(t - 1, j)]);
            }
        }
    }

    #[test]
    fn k2_residuals_orthogonal_to_lagged_difference() {
        let data = random_walks(80, 1, 2);
        let c = concentrate_data(&data, &CvarSpec::new(2, 1)).unwrap();
        let ip = c.r0.tr_mul(&c.z2);
        assert!(ip.abs().max() < 1e-10);
    }

    #[test]
    fn matches_two_step_ols_oracle() {
        let data = random_walks(200, 2, 3);
        let spec = CvarSpec::new(2, 1).with_deterministic(DeterministicSpec {
            constant: true,
            ..Default::default()
        });
        let c = concentrate_data(&data, &spec).unwrap();
        // Oracle: per-column OLS via explicit normal equations.
        let x = &c.z2;
        let xtx_inv = (x.transpose() * x).try_inverse().unwrap();
        for (dep, got) in [(&c.z0, &c.r0), (&c.z1, &c.r1)] {
            for j in 0..dep.ncols() {
                let y = dep.column(j).into_owned();
                let b = &xtx_inv * (x.transpose() * &y);
                let e = &y - x * b;
                for i in 0..e.len() {
                    assert!((e[i] - got[(i, j)]).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn insufficient_observations() {
        let data = random_walks(6, 2, 4);
        assert!(matches!(
            concentrate_data(&data, &CvarSpec::new(2, 1)),
            Err(Error::InsufficientObservations { .. })
        ));
    }

    #[test]
    fn collinear_regressors() {
        let data = random_walks(60, 2, 5);
        let spec = CvarSpec::new(1, 1).with_deterministic(DeterministicSpec {
            constant: true,
            step_dummies: vec![0],
            ..Default::default()
        });
        assert_eq!(concentrate_data(&data, &spec), Err(Error::SingularRegressors));
    }
}
