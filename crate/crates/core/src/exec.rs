//! Data-parallel maps over independent work items.
//!
//! Every batch operation in the crate (fans of starting points, transversals,
//! fiber samples, sweep entries) is a pure map over an immutable slice, so the
//! only choice is who runs it. With the `parallel` feature the default mode is
//! rayon's global pool; without it every mode degrades to a sequential loop.

/// How a batch map is executed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ExecMode {
    Sequential,
    #[default]
    Parallel,
}

impl ExecMode {
    /// Whether [`ExecMode::Parallel`] actually runs in parallel in this build.
    pub const fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }
}

/// Maps `f` over `items`, preserving order.
pub fn map<T, R, F>(mode: ExecMode, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match mode {
        ExecMode::Sequential => items.iter().map(f).collect(),
        ExecMode::Parallel => par_map(items, f),
    }
}

/// Fallible map; returns the first error in item order.
pub fn try_map<T, R, E, F>(mode: ExecMode, items: &[T], f: F) -> Result<Vec<R>, E>
where
    T: Sync,
    R: Send,
    E: Send,
    F: Fn(&T) -> Result<R, E> + Sync + Send,
{
    map(mode, items, f).into_iter().collect()
}

#[cfg(feature = "parallel")]
fn par_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn par_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree_and_keep_order() {
        let xs: Vec<u64> = (0..1000).collect();
        let seq = map(ExecMode::Sequential, &xs, |x| x * x);
        let par = map(ExecMode::Parallel, &xs, |x| x * x);
        assert_eq!(seq, par);
        assert_eq!(seq[31], 961);
    }

    #[test]
    fn try_map_reports_first_error() {
        let xs: Vec<i32> = vec![1, 2, -3, 4, -5];
        let r: Result<Vec<i32>, i32> =
            try_map(
                ExecMode::Parallel,
                &xs,
                |&x| if x < 0 { Err(x) } else { Ok(x) },
            );
        assert_eq!(r, Err(-3));
    }
}
