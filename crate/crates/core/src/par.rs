//! Execution strategy for batch work.
//!
//! With the `parallel` feature (on by default) batches run on the rayon
//! global pool, or on whatever pool the caller installs. Without it only the
//! sequential path exists. Either way results come back in input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Defaults to `Parallel` when it is available.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
    #[cfg(feature = "parallel")]
    #[default]
    Parallel,
}

impl Exec {
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            Exec::Sequential => items.iter().map(f).collect(),
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.par_iter().map(f).collect(),
        }
    }
}
