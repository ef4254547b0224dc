//! Mutation-only hill climbers: RLS and the (1+1) EA.

use super::run::{Accounting, RunOptions, RunResult};
use crate::mutation::{apply_list_with_delta, sample_mutation_count, undo_list, MutationSampler};
use crate::{Error, HamProblem, MutationFamily, MutationList, Permutation, RandomSource, Result};

/// Randomized local search with exchange mutations from a uniformly random start.
pub fn rls_run(problem: &HamProblem, rng: &mut RandomSource, options: RunOptions) -> Result<RunResult> {
    let family = MutationFamily::exchange(problem.size())?;
    let start = Permutation::random(problem.size(), rng)?;
    rls_run_from(problem, &family, start, rng, options)
}

/// RLS from a given start: one uniform elementary mutation per iteration,
/// accepted unless it lowers the fitness.
pub fn rls_run_from(
    problem: &HamProblem,
    family: &MutationFamily,
    start: Permutation,
    rng: &mut RandomSource,
    options: RunOptions,
) -> Result<RunResult> {
    hill_climb(problem, family, start, rng, options, |_| Ok(1))
}

/// The (1+1) EA from a uniformly random start.
pub fn opl_ea_run(
    problem: &HamProblem,
    family: &MutationFamily,
    rng: &mut RandomSource,
    options: RunOptions,
) -> Result<RunResult> {
    let start = Permutation::random(problem.size(), rng)?;
    opl_ea_run_from(problem, family, start, rng, options)
}

/// The (1+1) EA: `ℓ ~ [B(m, 1/m) | ℓ > 0]` distinct mutations in random
/// order per iteration, accepted unless the fitness drops.
pub fn opl_ea_run_from(
    problem: &HamProblem,
    family: &MutationFamily,
    start: Permutation,
    rng: &mut RandomSource,
    options: RunOptions,
) -> Result<RunResult> {
    let m = family.space_size();
    let p = 1.0 / m as f64;
    hill_climb(problem, family, start, rng, options, |rng| sample_mutation_count(m, p, rng))
}

fn hill_climb(
    problem: &HamProblem,
    family: &MutationFamily,
    start: Permutation,
    rng: &mut RandomSource,
    options: RunOptions,
    mut mutation_count: impl FnMut(&mut RandomSource) -> Result<u64>,
) -> Result<RunResult> {
    let n = problem.size();
    check_setup(problem, family, &start, &options)?;
    let mut x = start;
    let mut fitness = problem.evaluate(&x)?.value();
    let mut acct = Accounting::new(n, options.record_levels);
    let mut sampler = MutationSampler::new();
    let mut list = MutationList::empty();
    let target = problem.target_raw();

    while fitness < n && acct.evaluations < options.budget {
        let ell = mutation_count(rng)?;
        sampler.sample_list_into(family, ell, rng, &mut list)?;
        let delta = apply_list_with_delta(&list, x.raw_mut(), target);
        let distance = n - fitness;
        if delta < 0 {
            undo_list(&list, x.raw_mut());
        } else {
            fitness = (fitness as i64 + delta as i64) as usize;
        }
        acct.record(distance, 1, delta > 0);
    }
    Ok(acct.finish(problem.fitness_value(fitness), rng.seed()))
}

pub(crate) fn check_setup(
    problem: &HamProblem,
    family: &MutationFamily,
    start: &Permutation,
    options: &RunOptions,
) -> Result<()> {
    if family.n() != problem.size() {
        return Err(Error::SizeMismatch { expected: problem.size(), found: family.n() });
    }
    if start.len() != problem.size() {
        return Err(Error::SizeMismatch { expected: problem.size(), found: start.len() });
    }
    if options.budget == 0 {
        return Err(Error::InvalidParameter("budget must be at least 1"));
    }
    Ok(())
}
