//! Ordered data-parallel map. With the `parallel` feature the work is spread
//! over the rayon pool; without it the same closure runs sequentially. The
//! output order always equals the input order, and every reduction in the
//! crate is performed afterwards on that ordered output, so both builds
//! produce bit-identical results.

use crate::error::Result;

#[cfg(feature = "parallel")]
pub fn try_map<T, U, F>(items: &[T], f: F) -> Result<Vec<U>>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Result<U> + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn try_map<T, U, F>(items: &[T], f: F) -> Result<Vec<U>>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Result<U> + Sync + Send,
{
    items.iter().map(f).collect()
}

/// Sequential reference path, always available (used by benches and tests
/// to compare against the parallel build).
pub fn try_map_sequential<T, U, F>(items: &[T], f: F) -> Result<Vec<U>>
where
    F: Fn(&T) -> Result<U>,
{
    items.iter().map(f).collect()
}

pub fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
