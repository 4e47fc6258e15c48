//! Parallel-map capability handed to the counting engines.

use rayon::prelude::*;

/// Worker pool wrapper. `workers = 0` uses the global rayon pool.
#[derive(Clone, Copy, Debug, Default)]
pub struct Workers(pub usize);

impl Workers {
    /// Map `f` over `items` in parallel and fold the results with `merge`.
    /// `merge` must be associative and commutative; the result is then
    /// independent of scheduling.
    pub fn map_reduce<I, T, F, M>(&self, items: Vec<I>, identity: T, f: F, merge: M) -> T
    where
        I: Send,
        T: Send + Sync + Clone,
        F: Fn(I) -> T + Sync + Send,
        M: Fn(T, T) -> T + Sync + Send,
    {
        let run = || {
            items
                .into_par_iter()
                .map(&f)
                .reduce(|| identity.clone(), &merge)
        };
        if self.0 == 0 {
            run()
        } else {
            match rayon::ThreadPoolBuilder::new().num_threads(self.0).build() {
                Ok(pool) => pool.install(run),
                Err(_) => run(),
            }
        }
    }
}
