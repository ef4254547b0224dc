//! The (1+(λ,λ)) genetic algorithm adapted to permutations.
//!
//! Search points are permutations of `1..=n`, offspring are described by ordered
//! lists of elementary mutations (exchange, reverse, jump), and crossover is
//! order-preserving subsampling of the winning mutant's list. The crate also
//! carries the classic baselines (RLS and the (1+1) EA), four ways of choosing
//! λ, and the tooling used to check the runtime analysis on the `Ham` problem:
//! closed-form lower bounds on the probability of a "good" iteration, the
//! iteration classifier those bounds talk about, and a Monte-Carlo estimator.
//!
//! The crate is `no_std` and only needs `alloc`. IO, CLI and file formats live
//! in the `ollga-harness` companion crate.
//!
//! Positions and values are 1-based wherever they cross the public API.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algorithms;
pub mod analysis;
mod error;
pub mod ham;
pub mod mutation;
pub mod permutation;
pub mod rng;

pub use error::{Error, Result};
pub use ham::{ham_delta_exchange, ham_evaluate, FitnessValue, HamProblem};
pub use mutation::{ElementaryMutation, MutationFamily, MutationKind, MutationList};
pub use permutation::{random_permutation, Permutation};
pub use rng::RandomSource;
