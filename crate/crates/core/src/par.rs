//! Row-parallel execution helpers.
//!
//! Every hot loop in the crate maps an independent computation over row
//! indices and then reduces the collected results in index order. Results
//! are therefore bitwise identical whether the map runs sequentially or on
//! the rayon pool.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Below this many rows the parallel dispatch stays sequential; rayon
/// overhead dominates for tiny inputs.
pub(crate) const PAR_MIN_ROWS: usize = 64;

/// Maps `f` over `0..n`, in parallel when the `parallel` feature is on and
/// the range is large enough. Output order is always by index.
pub(crate) fn map_indexed<T: Send>(n: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    #[cfg(feature = "parallel")]
    {
        if n >= PAR_MIN_ROWS {
            return (0..n).into_par_iter().map(f).collect();
        }
    }
    map_indexed_seq(n, f)
}

/// Sequential reference path for `map_indexed`.
pub(crate) fn map_indexed_seq<T>(n: usize, f: impl Fn(usize) -> T) -> Vec<T> {
    (0..n).map(f).collect()
}

/// Forced-parallel path, used by the benchmark suite for comparison.
#[cfg(feature = "parallel")]
pub(crate) fn map_indexed_par<T: Send>(n: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    (0..n).into_par_iter().map(f).collect()
}
