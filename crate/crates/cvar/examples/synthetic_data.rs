//! Writes the bundled synthetic dataset to stdout.
//!
//! Four endogenous series (log output `y`, log consumption `c`, log CO2
//! concentration `m`, temperature `h`) follow a VAR(2) in error-correction
//! form with two cointegration relations and an unrestricted constant;
//! volcanic forcing `volc` enters the temperature equation in lagged
//! differences.
//!
//! ```text
//! cargo run --release -p cvar --example synthetic_data > crates/cvar/data/synthetic.csv
//! ```

use cvar::core::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

const FIRST: i32 = 1850;
const LAST: i32 = 2008;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(20081850);
    // Rows y, c, m, h.
    let beta = DMatrix::from_row_slice(4, 2, &[
        -1.0, -0.05,
        1.0, 0.0,
        0.0, -2.5,
        0.1, 1.0,
    ]);
    let alpha = DMatrix::from_row_slice(4, 2, &[
        0.05, 0.03,
        -0.3, 0.0,
        0.0, 0.0,
        0.0, -0.4,
    ]);
    let gamma = DMatrix::from_diagonal_element(4, 4, 0.2);
    let drift = DVector::from_vec(vec![0.015, 0.015, 0.003, 0.00825]);
    let psi_h = 0.3;
    let sd = [0.02, 0.015, 0.008, 0.05];
    let rho_yc = 0.6;

    let t = (LAST - FIRST + 1) as usize;
    let mut volc = vec![0.0; t];
    for v in volc.iter_mut() {
        if rng.random::<f64>() < 0.06 {
            *v = -rng.random_range(0.5..2.0);
        }
    }
    let x0 = DVector::from_vec(vec![0.0, -0.3, 5.635, 14.0875]);
    let mu = beta.transpose() * &x0;
    let mut x: Vec<DVector<f64>> = vec![x0.clone(), x0];
    for i in 2..t {
        let z: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
        let eps = DVector::from_vec(vec![
            sd[0] * z[0],
            sd[1] * (rho_yc * z[0] + (1.0 - rho_yc * rho_yc).sqrt() * z[1]),
            sd[2] * z[2],
            sd[3] * z[3],
        ]);
        let prev = &x[i - 1];
        let dprev = &x[i - 1] - &x[i - 2];
        let mut dx = &alpha * (beta.transpose() * prev - &mu) + &gamma * dprev + &drift + eps;
        dx[3] += psi_h * (volc[i - 1] - volc[i - 2]);
        x.push(prev + dx);
    }

    println!("year,y,c,m,h,volc");
    for (i, xi) in x.iter().enumerate() {
        println!(
            "{},{:.6},{:.6},{:.6},{:.6},{:.4}",
            FIRST + i as i32,
            xi[0],
            xi[1],
            xi[2],
            xi[3],
            volc[i]
        );
    }
}
