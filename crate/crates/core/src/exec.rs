//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (on by default) [`Strategy::Parallel`] runs on
//! the rayon global pool; without it every strategy runs sequentially. All
//! helpers return results in index order, so outputs never depend on the
//! strategy or the thread count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    Parallel,
    Sequential,
}

impl Strategy {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Strategy::Parallel
    }
}

/// First `Some` produced by `f` over `0..n`, lowest index wins.
pub fn find_first<T, F>(strategy: Strategy, n: usize, f: F) -> Option<T>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() {
        return (0..n).into_par_iter().find_map_first(f);
    }
    let _ = strategy;
    (0..n).find_map(f)
}

/// `f` applied to every index in `0..n`, collected in order.
pub fn map_indices<T, F>(strategy: Strategy, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() {
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = strategy;
    (0..n).map(f).collect()
}

/// `f` applied to every item, collected in order.
pub fn map_slice<S, T, F>(strategy: Strategy, items: &[S], f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = strategy;
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn find_first_is_order_stable() {
        for strategy in [Strategy::Parallel, Strategy::Sequential] {
            let hit = find_first(strategy, 10_000, |i| (i % 997 == 996).then_some(i));
            assert_eq!(hit, Some(996));
            assert_eq!(find_first(strategy, 100, |_| None::<usize>), None);
        }
    }

    #[test]
    fn maps_keep_order() {
        let squares = map_indices(Strategy::Parallel, 1000, |i| i * i);
        assert_eq!(squares, map_indices(Strategy::Sequential, 1000, |i| i * i));
        let items: Vec<u32> = (0..500).collect();
        assert_eq!(map_slice(Strategy::Parallel, &items, |x| x + 1)[499], 500);
    }
}
