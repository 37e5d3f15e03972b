//! Row-parallel helpers.
//!
//! With the `parallel` feature (default) work is spread over the rayon pool;
//! without it, or when [`Execution::Sequential`] is selected at runtime, the
//! same closures run in a plain loop. Results are identical either way since
//! every row is computed independently.

use std::sync::atomic::{AtomicU8, Ordering};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

static MODE: AtomicU8 = AtomicU8::new(if cfg!(feature = "parallel") { 1 } else { 0 });

impl Execution {
    /// The process-wide mode used by assembly and sweeps.
    pub fn current() -> Self {
        match MODE.load(Ordering::Relaxed) {
            0 => Execution::Sequential,
            _ => Execution::Parallel,
        }
    }

    /// Select the process-wide mode. `Parallel` degrades to sequential when
    /// the crate is built without the `parallel` feature.
    pub fn set(mode: Execution) {
        let value = match mode {
            Execution::Parallel if cfg!(feature = "parallel") => 1,
            _ => 0,
        };
        MODE.store(value, Ordering::Relaxed);
    }
}

/// Fill a row-major buffer, one closure call per row.
pub fn fill_rows<T, F>(buffer: &mut [T], row_len: usize, fill: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Sync + Send,
{
    if row_len == 0 {
        return;
    }
    match Execution::current() {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            buffer.par_chunks_mut(row_len).enumerate().for_each(|(i, row)| fill(i, row));
        }
        _ => buffer.chunks_mut(row_len).enumerate().for_each(|(i, row)| fill(i, row)),
    }
}

/// Map over a slice, preserving order.
pub fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    match Execution::current() {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

/// Configure the global worker pool. Only the first call has an effect.
pub fn init_workers(threads: Option<usize>) {
    #[cfg(feature = "parallel")]
    {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(n) = threads {
            builder = builder.num_threads(n.max(1));
        }
        let _ = builder.build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
    // dense factorizations stay single-threaded; parallelism lives at the row/sweep level
    faer::set_global_parallelism(faer::Par::Seq);
}
