//! Pairwise matrices with one task per origin.

use rayon::prelude::*;

use pathdiv_core::report::{self, AdpMatrix, Metric};
use pathdiv_core::sources::OriginMap;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "PATHDIV_THREADS";

/// Reads [`THREADS_ENV`]; `Ok(None)` when unset or empty.
pub fn threads_from_env() -> Result<Option<usize>, String> {
    match std::env::var(THREADS_ENV) {
        Ok(v) if v.trim().is_empty() => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(format!("{THREADS_ENV} must be a positive integer, got {v:?}")),
        },
        Err(_) => Ok(None),
    }
}

/// Same result as [`report::compute_matrix`], with origins spread over a pool
/// of `threads` workers (rayon's default when `None`). The output does not
/// depend on the thread count.
pub fn compute_matrix(
    digraphs: &OriginMap,
    metric: Metric,
    threads: Option<usize>,
) -> pathdiv_core::Result<AdpMatrix> {
    let roster = report::check_roster(digraphs)?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().expect("thread pool");
    let columns = pool.install(|| {
        digraphs
            .par_iter()
            .map(|(&o, a)| report::origin_column(a, &roster, metric).map(|col| (o, col)))
            .collect::<pathdiv_core::Result<Vec<_>>>()
    })?;
    report::assemble_matrix(roster, columns)
}
