//! Execution policy for the exhaustive scans.
//!
//! With the `parallel` feature the scans are split over rayon's pool; without
//! it [`Exec::Parallel`] silently degrades to the sequential path. Callers only
//! ever see deterministic reductions.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// Whether work will actually be spread over threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

/// Maps every index in `0..len` and folds the results with `reduce`.
///
/// `reduce` must be associative and commutative for the output to be
/// independent of the split.
pub(crate) fn map_reduce<T, M, R>(exec: Exec, len: usize, identity: T, map: M, reduce: R) -> T
where
    T: Send + Sync + Clone,
    M: Fn(usize) -> T + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..len)
            .into_par_iter()
            .map(map)
            .reduce(|| identity.clone(), &reduce);
    }
    let _ = exec;
    (0..len).map(map).fold(identity, reduce)
}

/// Ordered map over `0..len`; output order matches the index order.
pub(crate) fn map_collect<T, M>(exec: Exec, len: usize, map: M) -> Vec<T>
where
    T: Send,
    M: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..len).into_par_iter().map(map).collect();
    }
    let _ = exec;
    (0..len).map(map).collect()
}
