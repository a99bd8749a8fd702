//! Regenerates the embedded trace-test quantile tables.
//!
//! cargo run -p cvar --release --example trace_tables -- [reps] [T] > crates/core/src/estimator/trace_quantiles.rs

use cvar::core::estimator::tables::{MAX_DIM, PROBS};
use cvar::core::{concentrate, rrr_solve, CvarSpec, DMatrix, DetCase, Role, TimeFrame};
use cvar::core::estimator::trace_statistics;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

/// Drift and trend slope of the differenced process under each case; the
/// tabulated limits assume a drift whenever the model allows linear trends.
fn drift(case: DetCase) -> (f64, f64) {
    match case {
        DetCase::None | DetCase::RestrictedConstant => (0.0, 0.0),
        DetCase::Constant | DetCase::RestrictedTrend => (1.0, 0.0),
        DetCase::Trend => (1.0, 0.01),
    }
}

fn statistic(case: DetCase, dim: usize, t: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mu0, mu1) = drift(case);
    let mut x = DMatrix::<f64>::zeros(t + 1, dim);
    for i in 1..=t {
        for j in 0..dim {
            let e: f64 = StandardNormal.sample(&mut rng);
            x[(i, j)] = x[(i - 1, j)] + mu0 + mu1 * i as f64 + e;
        }
    }
    let years: Vec<i32> = (1..=(t + 1) as i32).collect();
    let names: Vec<String> = (0..dim).map(|j| format!("x{j}")).collect();
    let frame = TimeFrame::new(years, x, names, vec![Role::Endogenous; dim]).expect("frame");
    let spec = CvarSpec::new(1, 0).with_deterministic(case.spec(1));
    let conc = concentrate(&frame, &spec).expect("concentrate");
    let sol = rrr_solve(&conc.r0, &conc.r1).expect("rrr");
    let eig: Vec<f64> = sol.eigenvalues.iter().take(dim).copied().collect();
    trace_statistics(&eig, conc.t_eff())[0]
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let reps: usize = args.get(1).map(|s| s.parse().expect("reps")).unwrap_or(30_000);
    let t: usize = args.get(2).map(|s| s.parse().expect("T")).unwrap_or(1_000);
    let mut quantiles = Vec::new();
    let mut moments = Vec::new();
    for case in DetCase::ALL {
        let mut qs = Vec::new();
        let mut ms = Vec::new();
        for dim in 1..=MAX_DIM {
            let base = ((case.index() as u64) << 40) ^ ((dim as u64) << 32);
            let mut s: Vec<f64> = (0..reps).into_par_iter().map(|i| statistic(case, dim, t, base ^ i as u64)).collect();
            s.sort_by(f64::total_cmp);
            let q: Vec<f64> = PROBS
                .iter()
                .map(|p| {
                    let h = (s.len() - 1) as f64 * p;
                    let lo = h as usize;
                    let hi = (lo + 1).min(s.len() - 1);
                    s[lo] + (h - lo as f64) * (s[hi] - s[lo])
                })
                .collect();
            let mean = s.iter().sum::<f64>() / s.len() as f64;
            let var = s.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (s.len() - 1) as f64;
            eprintln!("{} dim {dim}: 95% = {:.3}", case.name(), q[PROBS.iter().position(|p| *p == 0.95).unwrap()]);
            qs.push(q);
            ms.push((mean, var));
        }
        quantiles.push(qs);
        moments.push(ms);
    }
    println!("// Generated by the trace_tables example ({reps} replications, T = {t}). Do not edit by hand.");
    println!();
    println!("static QUANTILES: [[[f64; {}]; MAX_DIM]; 5] = [", PROBS.len());
    for qs in &quantiles {
        println!("    [");
        for q in qs {
            let row: Vec<String> = q.iter().map(|v| format!("{v:.4}")).collect();
            println!("        [{}],", row.join(", "));
        }
        println!("    ],");
    }
    println!("];");
    println!();
    println!("static MOMENTS: [[[f64; 2]; MAX_DIM]; 5] = [");
    for ms in &moments {
        let row: Vec<String> = ms.iter().map(|(m, v)| format!("[{m:.4}, {v:.4}]")).collect();
        println!("    [{}],", row.join(", "));
    }
    println!("];");
}
