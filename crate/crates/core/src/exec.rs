//! Parallel or sequential execution of independent work items.
//!
//! With the `parallel` feature (default) [`Execution::Parallel`] runs on the
//! rayon global pool. Without it every mode runs sequentially on the calling
//! thread. Results never depend on the mode.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Whether this mode actually fans out in the current build.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Maps `f` over `items`, preserving order.
pub fn batch_map<T, R, F>(items: &[T], exec: Execution, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Evaluates `f` on each item in order and returns the first `Some`, as
/// sequential evaluation would. In parallel mode later items may run
/// speculatively.
pub fn first_some<T, R, F>(items: &[T], exec: Execution, f: F) -> Option<R>
where
    T: Sync,
    R: Send,
    F: Fn(usize, &T) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().enumerate().find_map_first(|(i, t)| f(i, t));
    }
    let _ = exec;
    items.iter().enumerate().find_map(|(i, t)| f(i, t))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let items: Vec<u32> = (0..1000).collect();
        let a = batch_map(&items, Execution::Sequential, |x| x * x);
        let b = batch_map(&items, Execution::Parallel, |x| x * x);
        assert_eq!(a, b);
        let pick = |_: usize, x: &u32| (x % 97 == 96).then_some(*x);
        assert_eq!(first_some(&items, Execution::Parallel, pick), Some(96));
        assert_eq!(first_some(&items, Execution::Sequential, pick), Some(96));
    }
}
