//! Declarative transform lists applied in file order.
//!
//! ```text
//! # comment
//! interpolate y
//! backcast c ref=y start=1820
//! splice h_old h_new lags=2 year=1850
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use cvar_core::TimeFrame;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Transform {
    Interpolate { column: String },
    Backcast { target: String, reference: String, start: i32 },
    Splice { old: String, new: String, lags: usize, year: i32 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Step {
    pub line: usize,
    pub transform: Transform,
}

pub fn parse(path: &Path, text: &str) -> Result<Vec<Step>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Line { path: path.to_path_buf(), line, msg };
        let mut words = content.split_whitespace();
        let op = words.next().unwrap_or("");
        let mut positional = Vec::new();
        let mut keys = BTreeMap::new();
        for w in words {
            match w.split_once('=') {
                Some((k, v)) => {
                    keys.insert(k.to_string(), v.to_string());
                }
                None => positional.push(w.to_string()),
            }
        }
        let take = |keys: &mut BTreeMap<String, String>, k: &str| -> Result<String> {
            keys.remove(k).ok_or_else(|| err(format!("`{op}` needs `{k}=`")))
        };
        let int = |s: String, k: &str| -> Result<i64> {
            s.parse().map_err(|_| err(format!("`{k}` must be an integer, got `{s}`")))
        };
        let transform = match (op, positional.as_slice()) {
            ("interpolate", [c]) => Transform::Interpolate { column: c.clone() },
            ("backcast", [t]) => Transform::Backcast {
                target: t.clone(),
                reference: take(&mut keys, "ref")?,
                start: int(take(&mut keys, "start")?, "start")? as i32,
            },
            ("splice", [o, n]) => Transform::Splice {
                old: o.clone(),
                new: n.clone(),
                lags: keys.remove("lags").map(|s| int(s, "lags")).transpose()?.unwrap_or(0) as usize,
                year: int(take(&mut keys, "year")?, "year")? as i32,
            },
            ("interpolate" | "backcast" | "splice", _) => {
                return Err(err(format!("wrong number of column names for `{op}`")))
            }
            _ => return Err(err(format!("unknown transform `{op}`"))),
        };
        if let Some(k) = keys.keys().next() {
            return Err(err(format!("unexpected option `{k}` for `{op}`")));
        }
        out.push(Step { line, transform });
    }
    Ok(out)
}

/// Applies the steps in order and returns the frame and a text log.
pub fn apply(path: &Path, frame: TimeFrame, steps: &[Step]) -> Result<(TimeFrame, String)> {
    let mut frame = frame;
    let mut log = String::new();
    for step in steps {
        let at = |e: cvar_core::Error| Error::Line { path: path.to_path_buf(), line: step.line, msg: e.to_string() };
        match &step.transform {
            Transform::Interpolate { column } => {
                let before = missing_count(&frame, column);
                frame = frame.interpolate_linear(column).map_err(at)?;
                log.push_str(&format!("line {}: interpolate {column}: filled {before} values\n", step.line));
            }
            Transform::Backcast { target, reference, start } => {
                frame = frame.backcast_growth(target, reference, *start).map_err(at)?;
                log.push_str(&format!(
                    "line {}: backcast {target} from {start} with growth of {reference}\n",
                    step.line
                ));
            }
            Transform::Splice { old, new, lags, year } => {
                let (f, rep) = frame.regression_splice(old, new, *lags, *year).map_err(at)?;
                frame = f;
                let coef: Vec<String> = rep.coefficients.iter().map(|c| format!("{c:.6}")).collect();
                log.push_str(&format!(
                    "line {}: splice {old} <- {new} (lags {lags}) from {year}: overlap {}, R^2 {:.6}, coefficients [{}], replaced {} values\n",
                    step.line,
                    rep.overlap,
                    rep.r_squared,
                    coef.join(", "),
                    rep.replaced_years.len()
                ));
            }
        }
    }
    Ok((frame, log))
}

fn missing_count(frame: &TimeFrame, column: &str) -> usize {
    frame.column_index(column).map(|j| frame.missing().column(j).iter().filter(|m| **m).count()).unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_forms() {
        let p = Path::new("t.txt");
        let steps = parse(p, "# header\ninterpolate y\n\nbackcast c ref=y start=1820 # tail\nsplice a b lags=2 year=1850\n").unwrap();
        assert_eq!(steps.len(), 3);
        assert_eq!(steps[1].line, 4);
        assert_eq!(
            steps[2].transform,
            Transform::Splice { old: "a".into(), new: "b".into(), lags: 2, year: 1850 }
        );
    }

    #[test]
    fn unknown_transform_reports_line() {
        let e = parse(Path::new("t.txt"), "interpolate y\nsmooth y\n").unwrap_err();
        assert!(e.to_string().starts_with("t.txt:2:"), "{e}");
    }

    #[test]
    fn missing_option() {
        let e = parse(Path::new("t.txt"), "backcast c start=1820\n").unwrap_err();
        assert!(e.to_string().contains("ref="), "{e}");
    }
}
