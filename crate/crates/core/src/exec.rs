//! Sequential or data-parallel execution of independent index-mapped work.
//!
//! Without the `parallel` feature, [`Execution::Parallel`] runs sequentially.
//! Output order never depends on the strategy.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// `f(0), f(1), ..., f(n - 1)` collected in order.
    pub fn map<R, F>(self, n: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        match self {
            Execution::Sequential => (0..n).map(f).collect(),
            #[cfg(feature = "parallel")]
            Execution::Parallel => (0..n).into_par_iter().map(f).collect(),
            #[cfg(not(feature = "parallel"))]
            Execution::Parallel => (0..n).map(f).collect(),
        }
    }

    /// Applies `f` to every chunk of `data` of length `chunk`.
    pub fn for_chunks<T, F>(self, data: &mut [T], chunk: usize, f: F)
    where
        T: Send,
        F: Fn(usize, &mut [T]) + Sync + Send,
    {
        match self {
            Execution::Sequential => data.chunks_mut(chunk).enumerate().for_each(|(k, c)| f(k, c)),
            #[cfg(feature = "parallel")]
            Execution::Parallel => data.par_chunks_mut(chunk).enumerate().for_each(|(k, c)| f(k, c)),
            #[cfg(not(feature = "parallel"))]
            Execution::Parallel => data.chunks_mut(chunk).enumerate().for_each(|(k, c)| f(k, c)),
        }
    }
}
