//! Tools for checking the runtime analysis of the GA on `Ham` with exchanges:
//! closed-form lower bounds on the probability that an iteration is "good"
//! for a threshold τ, the classifier that decides goodness for a concrete
//! iteration, a Monte-Carlo estimator of that probability, and an exact
//! census of single-exchange effects.

mod bounds;
mod census;
mod classify;
mod estimate;

pub use bounds::{
    bound_tau0, bound_tau1, bound_tau2, good_iteration_bound, maximize_bound, IterationModel, SamplingMode, Threshold,
};
pub use census::{enumerate_exchange_effects, ExchangeCensus};
pub use classify::{classify_iteration, IterationClassifier};
pub use estimate::{
    canonical_parent, estimate_good_probability, random_parent_at_distance, GoodIterationEstimate, ParentShape, Z_99,
};
