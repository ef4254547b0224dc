//! Experiment harness for the permutation (1+(λ,λ)) GA: runtime sweeps,
//! λ landscape scans and Monte-Carlo checks of the good-iteration bounds,
//! all written as CSV.

mod error;
pub mod landscape;
pub mod spec;
pub mod stats;
pub mod sweep;
pub mod verify;

pub use error::{HarnessError, Result};
pub use landscape::{run_landscape, LandscapeConfig, LandscapeRow};
pub use spec::{Algorithm, FitnessToken, PolicySpec};
pub use stats::{summarize, SummaryStat};
pub use sweep::{run_sweep, SweepConfig, SweepOutput};
pub use verify::{run_verify, VerifyGrid, VerifyRow};

/// A dedicated pool so `--threads` never touches the global one.
pub(crate) fn thread_pool(threads: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t.max(1));
    }
    Ok(builder.build()?)
}
