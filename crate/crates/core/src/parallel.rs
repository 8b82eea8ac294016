use rayon::{ThreadPool, ThreadPoolBuilder};

/// Runs `f` on a dedicated pool of `jobs` threads, or on the global pool when `jobs` is `None`.
pub(crate) fn install<R: Send>(jobs: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    match jobs.and_then(|n| pool(n)) {
        Some(p) => p.install(f),
        None => f(),
    }
}

fn pool(jobs: usize) -> Option<ThreadPool> {
    ThreadPoolBuilder::new().num_threads(jobs.max(1)).build().ok()
}
