//! q-series, Jacobi-type Fourier expansions, modular angles and a numeric
//! identity-verification harness.
//!
//! Everything is evaluated in `Complex64`. The nome is carried as a [`Nome`],
//! which stores `z` with `q = exp(2πiz)` so that fractional powers of `q`
//! and the substitution `q -> -q` have one fixed branch throughout.

pub mod angle;
pub mod elliptic;
pub mod error;
pub mod harness;
pub mod jacobi;
pub mod nome;
pub mod numeric;
pub mod qseries;
pub mod series;
pub mod theta;

pub use error::{Error, Result};
pub use nome::Nome;
pub use num_complex::Complex64 as C64;
pub use series::{SeriesValue, TruncationPolicy};

/// Run `f` on a worker pool of `jobs` threads. With the `parallel` feature
/// disabled, or `jobs == 0`, `f` runs on the calling thread.
pub fn with_jobs<R: Send>(jobs: usize, f: impl FnOnce() -> R + Send) -> Result<R> {
    #[cfg(feature = "parallel")]
    {
        if jobs > 0 {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
            return Ok(pool.install(f));
        }
    }
    let _ = jobs;
    Ok(f())
}

/// Map `f` over `items`, in parallel when the `parallel` feature is on.
/// Output order follows input order.
pub fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}
