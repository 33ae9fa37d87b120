//! Seeded randomness and the parallel/serial execution switch.
//!
//! Every stochastic routine draws from [`stream_rng`], a ChaCha8 generator
//! whose 64-bit stream id selects an independent substream. Work is split
//! into fixed batches, each batch owning one stream, so results do not
//! depend on how the pool schedules batches.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The generator used by every sampler in the crate.
pub type Rng = ChaCha8Rng;

/// Samples per Monte Carlo batch. Changing it changes every seeded result.
pub const BATCH: u64 = 4096;

pub fn stream_rng(seed: u64, stream: u64) -> Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Serial,
    /// Uses the rayon pool when the `parallel` feature is enabled,
    /// otherwise identical to `Serial`.
    #[default]
    Parallel,
}

/// Maps `f` over `0..n` and returns results in index order.
pub fn map_indexed<T, F>(exec: Exec, n: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            (0..n).into_par_iter().map(f).collect()
        }
        _ => (0..n).map(f).collect(),
    }
}

/// First index in `0..n` (in index order) for which `f` returns `Some`.
pub fn find_first<T, F>(exec: Exec, n: u64, f: F) -> Option<T>
where
    T: Send,
    F: Fn(u64) -> Option<T> + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            (0..n).into_par_iter().find_map_first(f)
        }
        _ => (0..n).find_map(f),
    }
}

/// Splits `total` samples into `(batch index, batch size)` pairs.
pub fn batches(total: u64) -> Vec<(u64, u64)> {
    let full = total / BATCH;
    let mut out: Vec<(u64, u64)> = (0..full).map(|i| (i, BATCH)).collect();
    if total % BATCH != 0 {
        out.push((full, total % BATCH));
    }
    out
}

/// Seeded count of successes over `total` Bernoulli trials, batched by stream.
pub fn count_hits<F>(exec: Exec, seed: u64, total: u64, trial: F) -> u64
where
    F: Fn(&mut Rng) -> bool + Sync + Send,
{
    let plan = batches(total);
    let counts = map_indexed(exec, plan.len() as u64, |k| {
        let (stream, size) = plan[k as usize];
        let mut rng = stream_rng(seed, stream);
        (0..size).filter(|_| trial(&mut rng)).count() as u64
    });
    counts.into_iter().sum()
}
