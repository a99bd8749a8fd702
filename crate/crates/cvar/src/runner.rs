use cvar_core::Runner;
use rayon::prelude::*;

/// Evaluates replicates on the rayon thread pool. Output order and values
/// match [`cvar_core::Sequential`] because every replicate seeds its own
/// generator.
#[derive(Debug, Clone, Copy, Default)]
pub struct Parallel;

impl Runner for Parallel {
    fn map<T, F>(&self, count: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        (0..count).into_par_iter().map(f).collect()
    }
}
