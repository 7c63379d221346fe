//! Data-parallel execution with a sequential fallback.
//!
//! With the `parallel` feature the parallel strategy runs on rayon; without it
//! both strategies run sequentially. Results never depend on the strategy.

use std::cell::Cell;
use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

thread_local! {
    static CURRENT: Cell<Option<Exec>> = const { Cell::new(None) };
}

impl Exec {
    /// `Parallel` when the feature is compiled in.
    pub fn default_strategy() -> Exec {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }

    /// The strategy in effect on this thread.
    pub fn current() -> Exec {
        CURRENT
            .with(|c| c.get())
            .unwrap_or_else(Exec::default_strategy)
    }

    /// Runs `f` with `self` as the current strategy on this thread.
    pub fn install<T>(self, f: impl FnOnce() -> T) -> T {
        let prev = CURRENT.with(|c| c.replace(Some(self)));
        let out = f();
        CURRENT.with(|c| c.set(prev));
        out
    }

    /// The `Some` result at the smallest index in `range`.
    pub fn find_first<T, F>(self, range: Range<u64>, f: F) -> Option<T>
    where
        T: Send,
        F: Fn(u64) -> Option<T> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => range
                .into_par_iter()
                .find_map_first(|i| Exec::Sequential.install(|| f(i))),
            _ => range.into_iter().find_map(f),
        }
    }

    /// `f` over `items`, in order.
    pub fn map<I, T, F>(self, items: &[I], f: F) -> Vec<T>
    where
        I: Sync,
        T: Send,
        F: Fn(&I) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => items
                .par_iter()
                .map(|i| Exec::Sequential.install(|| f(i)))
                .collect(),
            _ => items.iter().map(f).collect(),
        }
    }

    /// `f` over `range`, in order.
    pub fn map_range<T, F>(self, range: Range<u64>, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => range
                .into_par_iter()
                .map(|i| Exec::Sequential.install(|| f(i)))
                .collect(),
            _ => range.map(f).collect(),
        }
    }

    /// Whether `f` holds on every index.
    pub fn all<F>(self, range: Range<u64>, f: F) -> bool
    where
        F: Fn(u64) -> bool + Sync + Send,
    {
        self.find_first(range, |i| (!f(i)).then_some(())).is_none()
    }
}

/// Configures the global rayon pool. Without the `parallel` feature this is a no-op.
pub fn set_threads(n: usize) {
    #[cfg(feature = "parallel")]
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = n;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        for e in [Exec::Sequential, Exec::Parallel] {
            assert_eq!(
                e.find_first(0..1000, |i| (i % 97 == 96).then_some(i)),
                Some(96)
            );
            assert_eq!(e.map_range(0..10, |i| i * i)[9], 81);
            assert!(e.all(0..50, |i| i < 50));
            assert_eq!(e.map(&[1, 2, 3], |x| x + 1), vec![2, 3, 4]);
        }
    }

    #[test]
    fn install_is_scoped() {
        let inner = Exec::Sequential.install(Exec::current);
        assert_eq!(inner, Exec::Sequential);
        assert_eq!(Exec::current(), Exec::default_strategy());
    }
}
