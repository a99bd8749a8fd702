//! Replicate scheduling for bootstrap and Monte Carlo loops.
//!
//! Every replicate owns a generator derived from `seed ^ index`, so results do
//! not depend on the order in which a [`Runner`] evaluates replicates.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Evaluates independent replicates and returns their outputs in index order.
pub trait Runner: Sync {
    fn map<T, F>(&self, count: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send;
}

/// Evaluates replicates one after another on the calling thread.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl Runner for Sequential {
    fn map<T, F>(&self, count: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        (0..count).map(f).collect()
    }
}

/// How replicate generators are seeded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SeedMode {
    /// Replicate `i` uses `seed ^ i`.
    #[default]
    PerReplicate,
    /// Every replicate uses `seed` itself. Only useful for degenerate checks.
    Shared,
}

impl SeedMode {
    pub fn rng(self, seed: u64, index: u64) -> ChaCha8Rng {
        match self {
            SeedMode::PerReplicate => child_rng(seed, index),
            SeedMode::Shared => ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

pub fn child_rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ index)
}

/// Salt that separates streams used for different purposes under one seed.
pub(crate) fn salted(seed: u64, salt: u64) -> u64 {
    seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15).rotate_left(17)
}

/// Attempts per replicate before a bootstrap gives up.
pub(crate) const MAX_ATTEMPTS: usize = 10;

/// Runs replicate `index` of `count`, redrawing with a fresh generator when
/// `f` fails. Returns the value and the number of redraws.
pub(crate) fn with_redraws<T>(
    stream: u64,
    index: usize,
    count: usize,
    mut f: impl FnMut(&mut ChaCha8Rng) -> Result<T>,
) -> Result<(T, usize)> {
    let mut last = Error::BootstrapFailure(String::from("no attempt"));
    for attempt in 0..MAX_ATTEMPTS {
        let mut rng = child_rng(stream, (attempt * count + index) as u64);
        match f(&mut rng) {
            Ok(v) => return Ok((v, attempt)),
            Err(e) => last = e,
        }
    }
    Err(Error::BootstrapFailure(format!("replicate {index} failed {MAX_ATTEMPTS} times: {last}")))
}
