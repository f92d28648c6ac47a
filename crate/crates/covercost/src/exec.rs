//! Parallel/sequential execution switch.
//!
//! With the `parallel` feature the closures run on the rayon pool; without
//! it they run on a plain iterator. Results come back indexed in input
//! order either way, so downstream fixed-order reductions produce bitwise
//! identical output regardless of feature flags or worker counts.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub(crate) fn try_map_indexed<T, E, F>(count: usize, f: F) -> Result<Vec<T>, E>
where
    T: Send,
    E: Send,
    F: Fn(usize) -> Result<T, E> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..count).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..count).map(f).collect()
    }
}
