//! Batch evaluation helpers for embarrassingly parallel workloads (random
//! triplet sweeps, parameter grids).
//!
//! With the `parallel` feature (on by default) [`batch_map`] fans out over a
//! rayon thread pool; without it, the same call degrades to the sequential
//! loop. [`batch_map_seq`] is always sequential so the two paths can be
//! compared directly in benchmarks.

/// Maps `f` over `items` sequentially.
pub fn batch_map_seq<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// Maps `f` over `items`, in parallel when the `parallel` feature is enabled.
#[cfg(feature = "parallel")]
pub fn batch_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

/// Sequential fallback used when the `parallel` feature is disabled.
#[cfg(not(feature = "parallel"))]
pub fn batch_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    batch_map_seq(items, f)
}
