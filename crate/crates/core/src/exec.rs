//! Execution backend: rayon when the `parallel` feature is enabled,
//! plain iteration otherwise.
//!
//! Every parallel loop in this crate maps a contiguous index range and
//! collects results in index order, so output is identical regardless of
//! backend or thread schedule.

/// Maps `f` over `0..n`, in parallel when `parallel` is true and the
/// `parallel` feature is compiled in. Results come back in index order.
pub(crate) fn map_indexed<T, F>(parallel: bool, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Send + Sync,
{
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = parallel;
    (0..n).map(f).collect()
}
