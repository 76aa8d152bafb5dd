//! Work distribution for the search: a rayon pool when the `parallel`
//! feature is on, a plain sequential map otherwise. Results are merged in
//! input order, so every configuration produces byte-identical output.

use crate::error::Result;
#[cfg(feature = "parallel")]
use crate::error::Error;

pub(crate) enum Executor {
    Sequential,
    #[cfg(feature = "parallel")]
    Global,
    #[cfg(feature = "parallel")]
    Pool(rayon::ThreadPool),
}

impl Executor {
    /// `None` uses the shared global pool (or sequential execution when the
    /// `parallel` feature is off); `Some(0)` and `Some(1)` force sequential
    /// execution; `Some(w)` builds a dedicated pool of w threads.
    pub fn new(workers: Option<usize>) -> Result<Executor> {
        match workers {
            Some(0) | Some(1) => Ok(Executor::Sequential),
            None => {
                #[cfg(feature = "parallel")]
                {
                    Ok(Executor::Global)
                }
                #[cfg(not(feature = "parallel"))]
                {
                    Ok(Executor::Sequential)
                }
            }
            Some(_w) => {
                #[cfg(feature = "parallel")]
                {
                    let pool = rayon::ThreadPoolBuilder::new()
                        .num_threads(_w)
                        .build()
                        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
                    Ok(Executor::Pool(pool))
                }
                #[cfg(not(feature = "parallel"))]
                {
                    Ok(Executor::Sequential)
                }
            }
        }
    }

    /// Maps `f` over the items, returning results in input order.
    pub fn map<T, U, F>(&self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        match self {
            Executor::Sequential => items.iter().map(f).collect(),
            #[cfg(feature = "parallel")]
            Executor::Global => {
                use rayon::prelude::*;
                items.par_iter().map(f).collect()
            }
            #[cfg(feature = "parallel")]
            Executor::Pool(pool) => {
                use rayon::prelude::*;
                pool.install(|| items.par_iter().map(f).collect())
            }
        }
    }
}
