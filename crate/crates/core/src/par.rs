//! Deterministic parallelism helpers.
//!
//! Work is split into fixed-size index blocks that do not depend on the
//! worker count; per-block results are collected in block order and reduced
//! serially. Outputs are therefore identical for any thread pool size.

use rayon::prelude::*;

pub const BLOCK: u64 = 8192;

/// Map fixed index blocks `[start, end)` of `0..n` in parallel, preserving
/// block order in the returned vector.
pub fn map_blocks<R: Send>(n: u64, f: impl Fn(u64, u64) -> R + Sync + Send) -> Vec<R> {
    let nblocks = n.div_ceil(BLOCK);
    (0..nblocks)
        .into_par_iter()
        .map(|b| {
            let start = b * BLOCK;
            f(start, (start + BLOCK).min(n))
        })
        .collect()
}

/// Ordered parallel map over `0..n` items.
pub fn map_indexed<R: Send>(n: usize, f: impl Fn(usize) -> R + Sync + Send) -> Vec<R> {
    (0..n).into_par_iter().map(f).collect()
}
