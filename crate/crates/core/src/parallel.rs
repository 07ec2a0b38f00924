//! Running work on a pool of a chosen size.

/// Runs `f` inside a rayon pool with `jobs` worker threads; `0` means the
/// rayon default. Results of the crate's parallel entry points do not
/// depend on the pool size.
pub fn with_jobs<R: Send>(jobs: usize, f: impl FnOnce() -> R + Send) -> R {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool")
        .install(f)
}
