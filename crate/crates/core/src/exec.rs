//! Sequential or data-parallel evaluation of independent work items.
//!
//! Batch suites (isomorphism branches, census leaves, oracle grids) go through
//! [`Execution`] so the same code runs on one thread or on the rayon pool.
//! Without the `parallel` feature, [`Execution::Parallel`] falls back to the
//! sequential path. Results are always returned in input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

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
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => items.par_iter().map(f).collect(),
            _ => items.iter().map(f).collect(),
        }
    }

    /// First item (in input order) for which `f` returns `Some`.
    pub fn find_map_first<T, R, F>(self, items: &[T], f: F) -> Option<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> Option<R> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => items.par_iter().find_map_first(f),
            _ => items.iter().find_map(f),
        }
    }

    pub fn all<T, F>(self, items: &[T], f: F) -> bool
    where
        T: Sync,
        F: Fn(&T) -> bool + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => items.par_iter().all(f),
            _ => items.iter().all(f),
        }
    }

    pub fn filter_map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> Option<R> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => items.par_iter().filter_map(f).collect(),
            _ => items.iter().filter_map(f).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_modes_agree_and_keep_order() {
        let items: Vec<u64> = (0..1000).collect();
        for mode in [Execution::Sequential, Execution::Parallel] {
            let sq = mode.map(&items, |x| x * x);
            assert_eq!(sq[999], 998001);
            assert_eq!(
                mode.find_map_first(&items, |&x| (x > 10 && x % 7 == 0).then_some(x)),
                Some(14)
            );
            assert!(mode.all(&items, |&x| x < 1000));
            assert_eq!(mode.filter_map(&items, |&x| (x % 500 == 0).then_some(x)), vec![0, 500]);
        }
    }
}
