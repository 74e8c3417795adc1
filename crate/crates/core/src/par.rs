//! Range-splitting helpers whose results do not depend on the worker count.
//!
//! Every parallel reduction in the crate splits its index range into chunks of
//! a fixed size, reduces each chunk sequentially, and folds the per-chunk
//! results in chunk order. Floating-point sums are therefore bit-identical
//! whether the pool has one thread or sixty-four.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::ops::Range;

/// Fixed chunk length for all range splits.
pub const CHUNK: u64 = 1 << 12;

fn chunks(total: u64) -> Vec<Range<u64>> {
    let mut out = Vec::with_capacity((total / CHUNK + 1) as usize);
    let mut start = 0;
    while start < total {
        let end = (start + CHUNK).min(total);
        out.push(start..end);
        start = end;
    }
    out
}

/// Maps every chunk of `0..total` in parallel and returns the per-chunk
/// results in index order.
pub fn map_chunks<T, F>(total: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(Range<u64>) -> T + Sync + Send,
{
    chunks(total).into_par_iter().map(f).collect()
}

/// Deterministic parallel sum of `f(i)` over `0..total`.
pub fn sum_f64<F>(total: u64, f: F) -> f64
where
    F: Fn(u64) -> f64 + Sync + Send,
{
    map_chunks(total, |r| r.map(&f).sum::<f64>()).into_iter().sum()
}

/// Deterministic parallel sum of complex terms, kept as (re, im) pairs.
pub fn sum_complex<F>(total: u64, f: F) -> num_complex::Complex64
where
    F: Fn(u64) -> num_complex::Complex64 + Sync + Send,
{
    map_chunks(total, |r| r.map(&f).sum::<num_complex::Complex64>())
        .into_iter()
        .sum()
}

/// Deterministic parallel count of indices satisfying `pred`.
pub fn count<F>(total: u64, pred: F) -> u64
where
    F: Fn(u64) -> bool + Sync + Send,
{
    map_chunks(total, |r| r.filter(|&i| pred(i)).count() as u64)
        .into_iter()
        .sum()
}

/// Smallest index in `0..total` satisfying `pred`, searched in parallel.
pub fn find_first<F>(total: u64, pred: F) -> Option<u64>
where
    F: Fn(u64) -> bool + Sync + Send,
{
    chunks(total)
        .into_par_iter()
        .find_map_first(|r| r.into_iter().find(|&i| pred(i)))
}

/// Counter-based generator: the stream for `(seed, stream)` is fixed no
/// matter which worker draws from it.
pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
