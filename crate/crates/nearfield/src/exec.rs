//! Execution strategy for the heavy kernels.
//!
//! The correlation-matrix quadrature and the Monte-Carlo estimator both
//! reduce a long sequence of independent work items into one accumulator.
//! To make results **bit-identical** regardless of how they are executed,
//! the reduction is organised around fixed-size chunks:
//!
//! * the item range is split into chunks of a constant size that does not
//!   depend on the thread count;
//! * each chunk is mapped to a partial accumulator by summing its items in
//!   index order;
//! * partials are merged strictly in chunk order.
//!
//! The sequential path and the rayon path therefore perform the exact same
//! floating-point additions in the exact same order; only wall-clock time
//! differs.  This is what lets a seeded run produce byte-identical output
//! files whether it ran on one thread or sixteen.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How the chunked reductions execute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Chunks are processed one after another on the calling thread.
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
    /// Chunks are processed by the rayon thread pool (results are still
    /// merged in chunk order, so output is identical to [`Strategy::Sequential`]).
    #[cfg(feature = "parallel")]
    #[cfg_attr(feature = "parallel", default)]
    Parallel,
}

/// Splits `0..n_items` into consecutive chunks of `chunk_size` (the last may
/// be shorter), maps each chunk with `map`, and folds the partials in chunk
/// order with `merge`, starting from `init`.
///
/// `map` receives the chunk index and the item range it covers.
pub fn chunked_reduce<T, Map, Merge>(
    n_items: usize,
    chunk_size: usize,
    strategy: Strategy,
    init: T,
    map: Map,
    mut merge: Merge,
) -> T
where
    T: Send,
    Map: Fn(usize, std::ops::Range<usize>) -> T + Sync,
    Merge: FnMut(T, T) -> T,
{
    assert!(chunk_size > 0, "chunk size must be positive");
    let ranges: Vec<(usize, std::ops::Range<usize>)> = (0..n_items)
        .step_by(chunk_size)
        .enumerate()
        .map(|(idx, start)| (idx, start..(start + chunk_size).min(n_items)))
        .collect();
    match strategy {
        Strategy::Sequential => ranges
            .into_iter()
            .fold(init, |acc, (idx, range)| merge(acc, map(idx, range))),
        #[cfg(feature = "parallel")]
        Strategy::Parallel => {
            let partials: Vec<T> = ranges
                .into_par_iter()
                .map(|(idx, range)| map(idx, range))
                .collect();
            partials.into_iter().fold(init, merge)
        }
    }
}
