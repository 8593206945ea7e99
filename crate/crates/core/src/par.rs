//! Dispatch of independent, index-addressed work items.
//!
//! Every helper returns results in index order, so callers observe the same
//! output whether or not the work ran on the rayon pool. Without the
//! `parallel` feature the `parallel` flag is ignored.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Whether this build can dispatch on a thread pool.
pub const fn available() -> bool {
    cfg!(feature = "parallel")
}

/// Evaluates `f(0), .., f(n-1)` and collects the results in index order.
pub fn map_indexed<T, F>(n: usize, parallel: bool, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = parallel;
    (0..n).map(f).collect()
}

/// Maps `f` over a slice, preserving order.
pub fn map_slice<S, T, F>(items: &[S], parallel: bool, f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        return items.par_iter().map(f).collect();
    }
    let _ = parallel;
    items.iter().map(f).collect()
}
