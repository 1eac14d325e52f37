//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (default) and [`Parallelism::Parallel`], work
//! fans out over rayon; otherwise it runs in a plain loop. Every helper
//! returns results in input order, so callers see identical output in both
//! modes.

use serde::{Deserialize, Serialize};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Parallelism {
    Sequential,
    #[default]
    Parallel,
}

impl Parallelism {
    /// Whether parallel execution will actually happen in this build.
    pub fn enabled(self) -> bool {
        cfg!(feature = "parallel") && self == Parallelism::Parallel
    }
}

/// Maps `f` over `items`, preserving order.
pub fn map<T, R, F>(mode: Parallelism, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode.enabled() {
        return items.par_iter().map(f).collect();
    }
    let _ = mode;
    items.iter().map(f).collect()
}

/// Returns the result for the first item (in input order) for which `f`
/// yields `Some`, regardless of which worker finishes first.
pub fn find_map_first<T, R, F>(mode: Parallelism, items: &[T], f: F) -> Option<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode.enabled() {
        return items.par_iter().find_map_first(f);
    }
    let _ = mode;
    items.iter().find_map(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let items: Vec<u32> = (0..500).collect();
        let f = |x: &u32| if x % 97 == 96 { Some(*x) } else { None };
        assert_eq!(
            find_map_first(Parallelism::Sequential, &items, f),
            find_map_first(Parallelism::Parallel, &items, f)
        );
        assert_eq!(
            map(Parallelism::Sequential, &items, |x| x * 2),
            map(Parallelism::Parallel, &items, |x| x * 2)
        );
    }
}
