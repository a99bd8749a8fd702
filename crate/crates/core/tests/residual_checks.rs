use cvar_core::{residual_report, DMatrix};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

fn rejection_rate(phi: f64, reps: u64) -> f64 {
    let t = 1000;
    let mut hits = 0;
    for s in 0..reps {
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let mut e = DMatrix::<f64>::zeros(t, 2);
        for i in 0..t {
            for j in 0..2 {
                let prev = if i > 0 { e[(i - 1, j)] } else { 0.0 };
                let z: f64 = StandardNormal.sample(&mut rng);
                e[(i, j)] = phi * prev + z;
            }
        }
        let rep = residual_report(&e, 10, 0).unwrap();
        hits += usize::from(rep.p_value < 0.05);
    }
    hits as f64 / reps as f64
}

#[test]
fn portmanteau_size_on_white_noise() {
    let rate = rejection_rate(0.0, 500);
    assert!((0.03..=0.07).contains(&rate), "size {rate}");
}

#[test]
fn portmanteau_power_against_ar1() {
    let rate = rejection_rate(0.5, 200);
    assert!(rate > 0.95, "power {rate}");
}
