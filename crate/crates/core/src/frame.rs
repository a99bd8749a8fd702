//! Dated annual multivariate series and the reconstruction transforms used to
//! prepare them (interpolation, growth backcasting, regression splicing).

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg;

/// Role a column plays in the model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Endogenous,
    Exogenous,
    Deterministic,
}

impl Role {
    pub fn as_str(self) -> &'static str {
        match self {
            Role::Endogenous => "endogenous",
            Role::Exogenous => "exogenous",
            Role::Deterministic => "deterministic",
        }
    }
}

impl core::str::FromStr for Role {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "endogenous" | "endo" => Ok(Role::Endogenous),
            "exogenous" | "exo" => Ok(Role::Exogenous),
            "deterministic" | "det" => Ok(Role::Deterministic),
            other => Err(Error::InvalidSpec(format!("unknown role `{other}`"))),
        }
    }
}

/// Annual multivariate series with one row per year.
///
/// Missing cells hold `NaN` in `values` and `true` in the mask.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeFrame {
    years: Vec<i32>,
    values: DMatrix<f64>,
    names: Vec<String>,
    roles: Vec<Role>,
    missing: DMatrix<bool>,
}

/// Fit summary attached to a regression splice.
#[derive(Debug, Clone, PartialEq)]
pub struct SpliceReport {
    /// Constant first, then the coefficient on the new series and its lags.
    pub coefficients: Vec<f64>,
    pub r_squared: f64,
    pub overlap: usize,
    pub replaced_years: Vec<i32>,
}

impl TimeFrame {
    /// Builds a frame from complete columns. Years must be contiguous.
    pub fn new(
        years: Vec<i32>,
        values: DMatrix<f64>,
        names: Vec<String>,
        roles: Vec<Role>,
    ) -> Result<Self> {
        let missing = values.map(|v| v.is_nan());
        Self::with_mask(years, values, names, roles, missing)
    }

    pub fn with_mask(
        years: Vec<i32>,
        mut values: DMatrix<f64>,
        names: Vec<String>,
        roles: Vec<Role>,
        missing: DMatrix<bool>,
    ) -> Result<Self> {
        check_years(&years)?;
        if values.nrows() != years.len() || values.ncols() != names.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} years and {} names for a {}x{} value matrix",
                years.len(),
                names.len(),
                values.nrows(),
                values.ncols()
            )));
        }
        if roles.len() != names.len() || missing.shape() != values.shape() {
            return Err(Error::DimensionMismatch(
                "roles or mask do not match the columns".to_string(),
            ));
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(Error::DuplicateColumn(name.clone()));
            }
        }
        for (v, m) in values.iter_mut().zip(missing.iter()) {
            if *m {
                *v = f64::NAN;
            }
        }
        Ok(Self { years, values, names, roles, missing })
    }

    /// Builds a frame from `(year, cells)` rows in file order.
    ///
    /// Duplicate years are rejected. Gaps are rejected unless `fill_gaps` is
    /// set, in which case missing rows are inserted for later interpolation.
    pub fn from_rows(
        rows: Vec<(i32, Vec<Option<f64>>)>,
        names: Vec<String>,
        roles: Vec<Role>,
        fill_gaps: bool,
    ) -> Result<Self> {
        let n = names.len();
        let mut sorted = rows;
        sorted.sort_by_key(|r| r.0);
        for w in sorted.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::DuplicateYear(w[0].0));
            }
            if w[1].0 != w[0].0 + 1 && !fill_gaps {
                return Err(Error::NonContiguousYears { prev: w[0].0, next: w[1].0 });
            }
        }
        let mut full: Vec<(i32, Vec<Option<f64>>)> = Vec::with_capacity(sorted.len());
        for (year, cells) in sorted {
            if cells.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "row {year} has {} cells, expected {n}",
                    cells.len()
                )));
            }
            if let Some(last) = full.last().map(|r| r.0) {
                for gap in last + 1..year {
                    full.push((gap, vec![None; n]));
                }
            }
            full.push((year, cells));
        }
        let t = full.len();
        let years: Vec<i32> = full.iter().map(|r| r.0).collect();
        let values = DMatrix::from_fn(t, n, |i, j| full[i].1[j].unwrap_or(f64::NAN));
        let missing = DMatrix::from_fn(t, n, |i, j| full[i].1[j].is_none());
        Self::with_mask(years, values, names, roles, missing)
    }

    pub fn years(&self) -> &[i32] {
        &self.years
    }

    pub fn values(&self) -> &DMatrix<f64> {
        &self.values
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn roles(&self) -> &[Role] {
        &self.roles
    }

    pub fn missing(&self) -> &DMatrix<bool> {
        &self.missing
    }

    pub fn len(&self) -> usize {
        self.years.len()
    }

    pub fn is_empty(&self) -> bool {
        self.years.is_empty()
    }

    pub fn first_year(&self) -> i32 {
        self.years[0]
    }

    pub fn last_year(&self) -> i32 {
        *self.years.last().expect("frame has at least one year")
    }

    pub fn column_index(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownColumn(name.to_string()))
    }

    pub fn row_of_year(&self, year: i32) -> Result<usize> {
        if self.years.is_empty() || year < self.years[0] || year > self.last_year() {
            return Err(Error::YearOutOfRange(year));
        }
        Ok((year - self.years[0]) as usize)
    }

    pub fn is_missing(&self, row: usize, col: usize) -> bool {
        self.missing[(row, col)]
    }

    /// Column indices carrying `role`, in frame order.
    pub fn indices_with_role(&self, role: Role) -> Vec<usize> {
        (0..self.names.len()).filter(|&j| self.roles[j] == role).collect()
    }

    pub fn endogenous_names(&self) -> Vec<String> {
        self.indices_with_role(Role::Endogenous)
            .into_iter()
            .map(|j| self.names[j].clone())
            .collect()
    }

    /// Checks that no endogenous or exogenous cell is missing.
    pub fn validate_prepared(&self) -> Result<()> {
        for j in 0..self.names.len() {
            if self.roles[j] != Role::Deterministic && self.missing.column(j).iter().any(|m| *m) {
                return Err(Error::MissingValues(self.names[j].clone()));
            }
        }
        Ok(())
    }

    /// Copy with the named columns' values replaced by `columns` (T x k).
    pub fn with_columns(&self, names: &[String], columns: &DMatrix<f64>) -> Result<Self> {
        let mut out = self.clone();
        for (k, name) in names.iter().enumerate() {
            let j = self.column_index(name)?;
            for i in 0..self.len() {
                out.values[(i, j)] = columns[(i, k)];
                out.missing[(i, j)] = columns[(i, k)].is_nan();
            }
        }
        Ok(out)
    }

    /// Fills interior missing values of `column` by linear interpolation
    /// between the nearest observed anchors. Anchors are left untouched.
    pub fn interpolate_linear(&self, column: &str) -> Result<Self> {
        let j = self.column_index(column)?;
        let t = self.len();
        let anchors: Vec<usize> = (0..t).filter(|&i| !self.missing[(i, j)]).collect();
        if anchors.len() < 2 {
            return Err(Error::TooFewAnchors(column.to_string()));
        }
        if anchors[0] != 0 || *anchors.last().unwrap() != t - 1 {
            return Err(Error::EdgeMissing(column.to_string()));
        }
        let mut out = self.clone();
        for w in anchors.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            if hi == lo + 1 {
                continue;
            }
            let (vlo, vhi) = (self.values[(lo, j)], self.values[(hi, j)]);
            let span = (hi - lo) as f64;
            for i in lo + 1..hi {
                let w = (i - lo) as f64 / span;
                out.values[(i, j)] = vlo + w * (vhi - vlo);
                out.missing[(i, j)] = false;
            }
        }
        Ok(out)
    }

    /// Extends `target` backwards from `start` at the pace of `reference`:
    /// `target(t) = target(start) - sum_{s=t+1..start} d reference(s)`.
    pub fn backcast_growth(&self, target: &str, reference: &str, start: i32) -> Result<Self> {
        let jt = self.column_index(target)?;
        let jr = self.column_index(reference)?;
        let s = self.row_of_year(start)?;
        if self.missing[(s, jt)] {
            return Err(Error::MissingTarget { column: target.to_string(), year: start });
        }
        for i in 0..=s {
            if self.missing[(i, jr)] {
                return Err(Error::MissingReference {
                    column: reference.to_string(),
                    year: self.years[i],
                });
            }
        }
        let mut out = self.clone();
        let mut level = self.values[(s, jt)];
        for i in (0..s).rev() {
            level -= self.values[(i + 1, jr)] - self.values[(i, jr)];
            out.values[(i, jt)] = level;
            out.missing[(i, jt)] = false;
        }
        Ok(out)
    }

    /// Regresses `old` on a constant and `new` with `lags` lags over the
    /// overlap before `splice_year`, then replaces `old` from `splice_year`
    /// onward with the fitted values.
    pub fn regression_splice(
        &self,
        old: &str,
        new: &str,
        lags: usize,
        splice_year: i32,
    ) -> Result<(Self, SpliceReport)> {
        let jo = self.column_index(old)?;
        let jn = self.column_index(new)?;
        let split = self.row_of_year(splice_year)?;
        let regressors_ok =
            |i: usize| i >= lags && (i - lags..=i).all(|l| !self.missing[(l, jn)]);
        let overlap: Vec<usize> =
            (0..split).filter(|&i| !self.missing[(i, jo)] && regressors_ok(i)).collect();
        let needed = 10 * (lags + 1);
        if overlap.len() < needed {
            return Err(Error::InsufficientOverlap { needed, found: overlap.len() });
        }
        let design = |rows: &[usize]| {
            DMatrix::from_fn(rows.len(), lags + 2, |r, c| {
                if c == 0 {
                    1.0
                } else {
                    self.values[(rows[r] - (c - 1), jn)]
                }
            })
        };
        let x = design(&overlap);
        let y = DMatrix::from_fn(overlap.len(), 1, |r, _| self.values[(overlap[r], jo)]);
        let coef = linalg::ols(&x, &y)?;
        let fitted = &x * &coef;
        let mean = y.mean();
        let ss_tot: f64 = y.iter().map(|v| (v - mean) * (v - mean)).sum();
        let ss_res: f64 = (&y - &fitted).iter().map(|e| e * e).sum();
        let r_squared = if ss_tot > 0.0 { 1.0 - ss_res / ss_tot } else { 1.0 };

        let target_rows: Vec<usize> = (split..self.len()).collect();
        for &i in &target_rows {
            if !regressors_ok(i) {
                return Err(Error::MissingReference {
                    column: new.to_string(),
                    year: self.years[i],
                });
            }
        }
        let spliced = design(&target_rows) * &coef;
        let mut out = self.clone();
        for (k, &i) in target_rows.iter().enumerate() {
            out.values[(i, jo)] = spliced[(k, 0)];
            out.missing[(i, jo)] = false;
        }
        let report = SpliceReport {
            coefficients: coef.column(0).iter().copied().collect(),
            r_squared,
            overlap: overlap.len(),
            replaced_years: target_rows.iter().map(|&i| self.years[i]).collect(),
        };
        Ok((out, report))
    }
}

fn check_years(years: &[i32]) -> Result<()> {
    for w in years.windows(2) {
        if w[1] == w[0] {
            return Err(Error::DuplicateYear(w[0]));
        }
        if w[1] != w[0] + 1 {
            return Err(Error::NonContiguousYears { prev: w[0], next: w[1] });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn single(years: Vec<i32>, vals: Vec<Option<f64>>) -> TimeFrame {
        let rows = years.into_iter().zip(vals).map(|(y, v)| (y, vec![v])).collect();
        TimeFrame::from_rows(rows, vec!["y".into()], vec![Role::Endogenous], true).unwrap()
    }

    fn pair(years: core::ops::Range<i32>, f: impl Fn(i32) -> (Option<f64>, Option<f64>)) -> TimeFrame {
        let rows = years
            .map(|y| {
                let (a, b) = f(y);
                (y, vec![a, b])
            })
            .collect();
        TimeFrame::from_rows(
            rows,
            vec!["a".into(), "b".into()],
            vec![Role::Endogenous, Role::Endogenous],
            false,
        )
        .unwrap()
    }

    #[test]
    fn three_row_frame() {
        let f = single(vec![1000, 1001, 1002], vec![Some(0.1), Some(0.2), Some(0.3)]);
        assert_eq!(f.len(), 3);
        assert_eq!(f.values().ncols(), 1);
    }

    #[test]
    fn duplicate_year_rejected() {
        let rows = vec![(1000, vec![Some(1.0)]), (1001, vec![Some(1.0)]), (1001, vec![Some(2.0)])];
        let err = TimeFrame::from_rows(rows, vec!["y".into()], vec![Role::Endogenous], false);
        assert_eq!(err, Err(Error::DuplicateYear(1001)));
    }

    #[test]
    fn gap_rejected_by_default_and_filled_on_request() {
        let rows = vec![(1002, vec![Some(1.0)]), (1004, vec![Some(3.0)])];
        let err = TimeFrame::from_rows(rows.clone(), vec!["y".into()], vec![Role::Endogenous], false);
        assert_eq!(err, Err(Error::NonContiguousYears { prev: 1002, next: 1004 }));
        let f = TimeFrame::from_rows(rows, vec!["y".into()], vec![Role::Endogenous], true).unwrap();
        assert_eq!(f.years(), &[1002, 1003, 1004]);
        assert!(f.is_missing(1, 0));
        assert!(!f.is_missing(0, 0) && !f.is_missing(2, 0));
        assert_eq!(f.validate_prepared(), Err(Error::MissingValues("y".into())));
    }

    #[test]
    fn interpolation_examples() {
        let f = single(vec![1000, 1001, 1002], vec![Some(0.0), None, Some(2.0)]);
        assert_eq!(f.interpolate_linear("y").unwrap().values()[(1, 0)], 1.0);

        let f = single((1000..1005).collect(), vec![Some(1.0), None, None, None, Some(1.0)]);
        let g = f.interpolate_linear("y").unwrap();
        for i in 1..4 {
            assert_eq!(g.values()[(i, 0)], 1.0);
        }

        let f = single((1000..1004).collect(), vec![Some(0.0), None, None, Some(3.0)]);
        let g = f.interpolate_linear("y").unwrap();
        for (i, year) in (1000..1004).enumerate() {
            let line = (year - 1000) as f64;
            assert!((g.values()[(i, 0)] - line).abs() < 1e-15);
        }
    }

    #[test]
    fn interpolation_errors() {
        let f = single(vec![1000, 1001, 1002], vec![None, Some(1.0), Some(2.0)]);
        assert_eq!(f.interpolate_linear("y"), Err(Error::EdgeMissing("y".into())));
        let f = single(vec![1000, 1001, 1002], vec![Some(1.0), None, None]);
        assert_eq!(f.interpolate_linear("y"), Err(Error::TooFewAnchors("y".into())));
    }

    #[test]
    fn backcast_examples() {
        let f = pair(1790..1830, |y| (if y >= 1820 { Some(5.0) } else { None }, Some(1.0)));
        let g = f.backcast_growth("a", "b", 1820).unwrap();
        for i in 0..30 {
            assert_eq!(g.values()[(i, 0)], 5.0);
        }

        let f = pair(1800..1830, |y| {
            let r = if y <= 1820 { 0.01 * (y - 1800) as f64 } else { 0.2 };
            (if y >= 1820 { Some(5.0) } else { None }, Some(r))
        });
        let g = f.backcast_growth("a", "b", 1820).unwrap();
        assert!((g.values()[(0, 0)] - 4.80).abs() < 1e-12);
        for i in 20..30 {
            assert_eq!(g.values()[(i, 0)].to_bits(), f.values()[(i, 0)].to_bits());
        }

        let f = pair(1800..1830, |y| (Some(5.0), if y == 1810 { None } else { Some(0.0) }));
        assert_eq!(
            f.backcast_growth("a", "b", 1820),
            Err(Error::MissingReference { column: "b".into(), year: 1810 })
        );
    }

    #[test]
    fn splice_identity_and_affine() {
        let signal = |y: i32| libm::sin(y as f64 * 0.37) + 0.01 * y as f64;
        let f = pair(1800..1900, |y| (if y < 1870 { Some(signal(y)) } else { None }, Some(signal(y))));
        let (g, rep) = f.regression_splice("a", "b", 0, 1850).unwrap();
        assert!(rep.coefficients[0].abs() < 1e-9 && (rep.coefficients[1] - 1.0).abs() < 1e-10);
        for i in 0..100 {
            assert!((g.values()[(i, 0)] - g.values()[(i, 1)]).abs() < 1e-10);
        }

        let f = pair(1800..1900, |y| (Some(2.0 * signal(y) + 1.0), Some(signal(y))));
        let (g, rep) = f.regression_splice("a", "b", 0, 1850).unwrap();
        assert!((rep.coefficients[0] - 1.0).abs() < 1e-9 && (rep.coefficients[1] - 2.0).abs() < 1e-9);
        assert!((rep.r_squared - 1.0).abs() < 1e-12);
        for i in 50..100 {
            assert!((g.values()[(i, 0)] - (2.0 * g.values()[(i, 1)] + 1.0)).abs() < 1e-9);
        }
    }

    #[test]
    fn splice_insufficient_overlap() {
        let f = pair(1800..1810, |y| (Some(y as f64), Some(y as f64 * 0.5)));
        assert_eq!(
            f.regression_splice("a", "b", 2, 1805).map(|_| ()),
            Err(Error::InsufficientOverlap { needed: 30, found: 3 })
        );
    }

    proptest! {
        #[test]
        fn interpolation_is_idempotent(
            vals in proptest::collection::vec(proptest::option::weighted(0.6, -10.0f64..10.0), 3..40)
        ) {
            let mut vals = vals;
            let last = vals.len() - 1;
            vals[0] = Some(vals[0].unwrap_or(0.5));
            vals[last] = Some(vals[last].unwrap_or(-0.5));
            let f = single((0..vals.len() as i32).collect(), vals);
            let once = f.interpolate_linear("y").unwrap();
            let twice = once.interpolate_linear("y").unwrap();
            prop_assert_eq!(once, twice);
        }

        #[test]
        fn backcast_preserves_later_values(start in 1805i32..1825, step in -0.1f64..0.1) {
            let f = pair(1800..1830, |y| (Some(1.0 + 0.03 * (y - 1800) as f64), Some(step * y as f64)));
            let g = f.backcast_growth("a", "b", start).unwrap();
            let s = (start - 1800) as usize;
            for i in s..30 {
                prop_assert_eq!(g.values()[(i, 0)].to_bits(), f.values()[(i, 0)].to_bits());
            }
        }
    }
}
