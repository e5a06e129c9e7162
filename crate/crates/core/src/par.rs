//! Data-parallel helpers. With the `parallel` feature (default) work is spread
//! over the rayon pool; without it every helper runs sequentially with the
//! same results.

/// How a batch should be executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

/// Order-preserving map over a slice.
pub fn map<T, U, F>(items: &[T], exec: Execution, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    match exec {
        Execution::Sequential => items.iter().map(f).collect(),
        Execution::Parallel => parallel_map(items, f),
    }
}

#[cfg(feature = "parallel")]
fn parallel_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn parallel_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.iter().map(f).collect()
}

/// Runs `f` with at most `jobs` worker threads (`None` keeps the default pool).
#[cfg(feature = "parallel")]
pub fn with_jobs<R: Send>(jobs: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    match jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
        None => f(),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn with_jobs<R: Send>(_jobs: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    f()
}

/// Sizes the global pool once; later calls and sequential builds do nothing.
#[cfg(feature = "parallel")]
pub fn set_global_jobs(jobs: usize) {
    let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global();
}

#[cfg(not(feature = "parallel"))]
pub fn set_global_jobs(_jobs: usize) {}
