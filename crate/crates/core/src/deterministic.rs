//! Deterministic regressors: constants, step dummies and (broken) trends.
//!
//! Trend index origin: `t = 1` at the first year of the frame.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Deterministic terms of the error-correction model.
///
/// Unrestricted terms enter the equations freely; restricted terms enter the
/// cointegration relations only.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DeterministicSpec {
    /// Unrestricted constant.
    pub constant: bool,
    /// Unrestricted linear trend.
    pub unrestricted_trend: bool,
    /// Unrestricted step dummies `1{year >= break}`.
    pub step_dummies: Vec<i32>,
    /// Restricted broken trends `t * 1{year >= break}`.
    pub restricted_trends: Vec<i32>,
    /// Constant restricted to the cointegration space.
    pub restricted_constant: bool,
}

/// Standard deterministic cases with tabulated trace-test quantiles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetCase {
    None,
    RestrictedConstant,
    Constant,
    RestrictedTrend,
    Trend,
}

impl DetCase {
    pub const ALL: [DetCase; 5] = [
        DetCase::None,
        DetCase::RestrictedConstant,
        DetCase::Constant,
        DetCase::RestrictedTrend,
        DetCase::Trend,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            DetCase::None => "no deterministic terms",
            DetCase::RestrictedConstant => "restricted constant",
            DetCase::Constant => "unrestricted constant",
            DetCase::RestrictedTrend => "restricted trend, unrestricted constant",
            DetCase::Trend => "unrestricted trend and constant",
        }
    }

    /// Deterministic specification of this case for a sample starting at `first_year`.
    pub fn spec(self, first_year: i32) -> DeterministicSpec {
        let mut d = DeterministicSpec::default();
        match self {
            DetCase::None => {}
            DetCase::RestrictedConstant => d.restricted_constant = true,
            DetCase::Constant => d.constant = true,
            DetCase::RestrictedTrend => {
                d.constant = true;
                d.restricted_trends.push(first_year);
            }
            DetCase::Trend => {
                d.constant = true;
                d.unrestricted_trend = true;
            }
        }
        d
    }
}

impl DeterministicSpec {
    pub fn validate(&self, years: &[i32]) -> Result<()> {
        if self.constant && self.restricted_constant {
            return Err(Error::InvalidSpec(
                "constant and restricted constant are mutually exclusive".into(),
            ));
        }
        let (first, last) = match (years.first(), years.last()) {
            (Some(f), Some(l)) => (*f, *l),
            _ => return Err(Error::InsufficientObservations { available: 0, required: 1 }),
        };
        for &b in self.step_dummies.iter().chain(self.restricted_trends.iter()) {
            if b < first || b > last {
                return Err(Error::YearOutOfRange(b));
            }
        }
        Ok(())
    }

    fn sorted(v: &[i32]) -> Vec<i32> {
        let mut s = v.to_vec();
        s.sort_unstable();
        s
    }

    pub fn restricted_count(&self) -> usize {
        usize::from(self.restricted_constant) + self.restricted_trends.len()
    }

    pub fn unrestricted_count(&self) -> usize {
        usize::from(self.constant) + usize::from(self.unrestricted_trend) + self.step_dummies.len()
    }

    /// Restricted regressors at `year` for a trend origin `origin` (t = 1 there).
    pub fn restricted_at(&self, year: i32, origin: i32) -> Vec<f64> {
        let t = (year - origin + 1) as f64;
        let mut out = Vec::with_capacity(self.restricted_count());
        if self.restricted_constant {
            out.push(1.0);
        }
        for b in Self::sorted(&self.restricted_trends) {
            out.push(if year >= b { t } else { 0.0 });
        }
        out
    }

    /// Unrestricted regressors at `year`.
    pub fn unrestricted_at(&self, year: i32, origin: i32) -> Vec<f64> {
        let t = (year - origin + 1) as f64;
        let mut out = Vec::with_capacity(self.unrestricted_count());
        if self.constant {
            out.push(1.0);
        }
        if self.unrestricted_trend {
            out.push(t);
        }
        for b in Self::sorted(&self.step_dummies) {
            out.push(if year >= b { 1.0 } else { 0.0 });
        }
        out
    }

    pub fn restricted_names(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.restricted_constant {
            out.push(String::from("const"));
        }
        for b in Self::sorted(&self.restricted_trends) {
            out.push(format!("trend{b}"));
        }
        out
    }

    pub fn unrestricted_names(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.constant {
            out.push(String::from("const"));
        }
        if self.unrestricted_trend {
            out.push(String::from("trend"));
        }
        for b in Self::sorted(&self.step_dummies) {
            out.push(format!("step{b}"));
        }
        out
    }

    /// Standard case for asymptotic trace-test tables, if any.
    pub fn standard_case(&self, first_year: i32) -> Option<DetCase> {
        if !self.step_dummies.is_empty() {
            return None;
        }
        let full_trend = match self.restricted_trends.as_slice() {
            [] => false,
            [b] if *b <= first_year => true,
            _ => return None,
        };
        match (self.constant, self.restricted_constant, self.unrestricted_trend, full_trend) {
            (false, false, false, false) => Some(DetCase::None),
            (false, true, false, false) => Some(DetCase::RestrictedConstant),
            (true, false, false, false) => Some(DetCase::Constant),
            (true, false, false, true) => Some(DetCase::RestrictedTrend),
            (true, false, true, false) => Some(DetCase::Trend),
            _ => None,
        }
    }
}

/// Builds `(D_r, D_u)` for the given contiguous years; the trend origin is
/// the first year.
pub fn build_deterministics(
    spec: &DeterministicSpec,
    years: &[i32],
) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    spec.validate(years)?;
    for w in years.windows(2) {
        if w[1] != w[0] + 1 {
            return Err(Error::NonContiguousYears { prev: w[0], next: w[1] });
        }
    }
    let origin = years[0];
    let t = years.len();
    let mut dr = DMatrix::zeros(t, spec.restricted_count());
    let mut du = DMatrix::zeros(t, spec.unrestricted_count());
    for (i, &y) in years.iter().enumerate() {
        for (j, v) in spec.restricted_at(y, origin).into_iter().enumerate() {
            dr[(i, j)] = v;
        }
        for (j, v) in spec.unrestricted_at(y, origin).into_iter().enumerate() {
            du[(i, j)] = v;
        }
    }
    Ok((dr, du))
}
