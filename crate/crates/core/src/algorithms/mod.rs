//! Optimizers on `Ham_p`: RLS, the (1+1) EA and the permutation (1+(λ,λ)) GA,
//! with λ-control policies and evaluation accounting.

mod local;
mod ollga;
mod policy;
mod run;

pub use local::{opl_ea_run, opl_ea_run_from, rls_run, rls_run_from};
pub use ollga::{
    ollga_iteration, ollga_run, ollga_run_from, IterationOutcome, Ollga, OllgaIterationParams, OllgaState,
};
pub use policy::{lambda_policy_update, lambda_schedule_theoretical, LambdaPolicy};
pub use run::{LevelCost, RunOptions, RunResult};
