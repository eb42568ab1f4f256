//! Execution strategy for the data-parallel loops (the scan and the Burnside
//! sums). With the `parallel` feature disabled, [`Strategy::Parallel`] runs
//! sequentially; results are identical either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    Sequential,
    #[default]
    Parallel,
}

impl Strategy {
    /// True when this strategy will actually fan out across threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Strategy::Parallel
    }
}

/// Map over `items`, keeping input order in the output.
pub fn map_ordered<T, R, F>(strategy: Strategy, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = strategy;
    items.iter().map(f).collect()
}

/// Sum `f(i)` over `0..n`. The reduction is associative so the partitioning
/// does not affect the result.
pub fn sum_range<F>(strategy: Strategy, n: usize, f: F) -> u128
where
    F: Fn(usize) -> u128 + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() {
        return (0..n).into_par_iter().map(f).sum();
    }
    let _ = strategy;
    (0..n).map(f).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        let items: Vec<u64> = (0..1000).collect();
        let a = map_ordered(Strategy::Sequential, &items, |x| x * x);
        let b = map_ordered(Strategy::Parallel, &items, |x| x * x);
        assert_eq!(a, b);
        let s = sum_range(Strategy::Sequential, 500, |i| i as u128);
        let p = sum_range(Strategy::Parallel, 500, |i| i as u128);
        assert_eq!(s, p);
        assert_eq!(s, 124_750);
    }
}
