//! Simulated quantiles of the limiting trace-test distribution for the five
//! standard deterministic cases, dimensions `n - r0 = 1 ..= MAX_DIM`.
//!
//! The numbers come from `cargo run -p cvar --release --example trace_tables`
//! (random walks, `T = 1000`); regenerate `trace_quantiles.rs` with it.

use crate::deterministic::DetCase;
use crate::error::{Error, Result};
use crate::special::gamma_sf;

pub const MAX_DIM: usize = 8;

pub const PROBS: [f64; 27] = [
    0.005, 0.01, 0.025, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5, 0.55, 0.6, 0.65,
    0.7, 0.75, 0.8, 0.85, 0.9, 0.925, 0.95, 0.975, 0.99, 0.995, 0.999,
];

include!("trace_quantiles.rs");

fn row(case: DetCase, dim: usize) -> Result<(&'static [f64; 27], [f64; 2])> {
    if dim == 0 || dim > MAX_DIM {
        return Err(Error::InvalidSpec(alloc::format!(
            "no trace-test table for dimension {dim} (maximum {MAX_DIM}); use the bootstrap"
        )));
    }
    Ok((&QUANTILES[case.index()][dim - 1], MOMENTS[case.index()][dim - 1]))
}

/// Quantile at `prob`, linear in probability between grid points.
pub fn quantile(case: DetCase, dim: usize, prob: f64) -> Result<f64> {
    let (q, _) = row(case, dim)?;
    let p = prob.clamp(PROBS[0], PROBS[PROBS.len() - 1]);
    let i = PROBS.iter().position(|&g| g >= p).unwrap_or(PROBS.len() - 1);
    if i == 0 || PROBS[i] == p {
        return Ok(q[i]);
    }
    let w = (p - PROBS[i - 1]) / (PROBS[i] - PROBS[i - 1]);
    Ok(q[i - 1] + w * (q[i] - q[i - 1]))
}

/// Upper-tail probability of `stat`.
///
/// Inside the grid the distribution function is interpolated linearly; beyond
/// the last quantile the tail of a gamma law with the simulated mean and
/// variance is used, rescaled to be continuous at the grid end.
pub fn p_value(case: DetCase, dim: usize, stat: f64) -> Result<f64> {
    let (q, [mean, var]) = row(case, dim)?;
    let last = q.len() - 1;
    if stat <= q[0] {
        let f = if q[0] > 0.0 { PROBS[0] * (stat.max(0.0) / q[0]) } else { PROBS[0] };
        return Ok(1.0 - f);
    }
    if stat >= q[last] {
        let shape = mean * mean / var;
        let scale = var / mean;
        let at_end = gamma_sf(q[last], shape, scale);
        let tail = 1.0 - PROBS[last];
        if at_end <= 0.0 {
            return Ok(0.0);
        }
        return Ok((tail * gamma_sf(stat, shape, scale) / at_end).min(tail));
    }
    let i = q.iter().position(|&v| v >= stat).unwrap_or(last);
    let span = q[i] - q[i - 1];
    let w = if span > 0.0 { (stat - q[i - 1]) / span } else { 1.0 };
    Ok(1.0 - (PROBS[i - 1] + w * (PROBS[i] - PROBS[i - 1])))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantiles_increase() {
        for case in DetCase::ALL {
            for d in 1..=MAX_DIM {
                let q = &QUANTILES[case.index()][d - 1];
                assert!(q.windows(2).all(|w| w[0] <= w[1]), "{case:?} {d}");
            }
        }
    }

    #[test]
    fn p_value_inverts_quantile() {
        for case in DetCase::ALL {
            for d in 1..=MAX_DIM {
                for p in [0.1, 0.5, 0.9, 0.95, 0.99] {
                    let q = quantile(case, d, p).unwrap();
                    assert!((p_value(case, d, q).unwrap() - (1.0 - p)).abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn p_value_monotone_into_tail() {
        let mut prev = 1.0;
        for i in 0..400 {
            let p = p_value(DetCase::Constant, 2, i as f64 * 0.25).unwrap();
            assert!(p <= prev + 1e-15);
            prev = p;
        }
        assert!(prev < 1e-6);
    }

    #[test]
    fn known_critical_values() {
        // Published 95% asymptotic values (response-surface limits).
        let published = [
            (DetCase::None, 1, 4.130),
            (DetCase::None, 2, 12.321),
            (DetCase::RestrictedConstant, 1, 9.165),
            (DetCase::RestrictedConstant, 2, 20.262),
            (DetCase::Constant, 1, 3.841),
            (DetCase::Constant, 2, 15.495),
            (DetCase::RestrictedTrend, 1, 12.518),
            (DetCase::RestrictedTrend, 2, 25.872),
        ];
        for (case, d, v) in published {
            let q = quantile(case, d, 0.95).unwrap();
            assert!((q - v).abs() < 0.05 * v, "{case:?} d={d}: {q} vs {v}");
        }
    }
}
