//! Execution policy for the data-parallel loops in the solvers and oracles.
//!
//! Every parallel loop in the crate goes through these helpers so that the
//! sequential and rayon paths produce identical results: searches return the
//! lowest-index hit, and maps preserve input order.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Whether independent work items may run on the rayon pool.
///
/// `Parallel` degrades to `Sequential` when the crate is built without the
/// `parallel` feature.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Order-preserving map over a slice.
pub fn map<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Lowest index in `range` for which `f` returns `Some`, with its value.
pub fn find_first<R, F>(exec: Execution, range: Range<usize>, f: F) -> Option<R>
where
    R: Send,
    F: Fn(usize) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return range.into_par_iter().find_map_first(f);
    }
    let _ = exec;
    range.into_iter().find_map(f)
}

/// Minimum of `f` over `range`; ties resolve to the lowest index.
pub fn min_by_key<K, F>(exec: Execution, range: Range<usize>, f: F) -> Option<(usize, K)>
where
    K: Ord + Send,
    F: Fn(usize) -> K + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return range.into_par_iter().map(|i| (f(i), i)).min().map(|(k, i)| (i, k));
    }
    let _ = exec;
    range.map(|i| (f(i), i)).min().map(|(k, i)| (i, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_paths_agree() {
        for exec in [Execution::Sequential, Execution::Parallel] {
            let hit = find_first(exec, 0..1000, |i| (i % 97 == 96).then_some(i * 2));
            assert_eq!(hit, Some(192));
            let squares = map(exec, &[1u32, 2, 3], |x| x * x);
            assert_eq!(squares, vec![1, 4, 9]);
            let m = min_by_key(exec, 0..10, |i| (i as i64 - 4).abs() / 2);
            assert_eq!(m, Some((3, 0)));
        }
    }
}
