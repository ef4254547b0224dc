//! The (1+(λ,λ)) GA on permutations.
//!
//! One iteration: sample `ℓ`, build `⌈λ⌉` mutants from `ℓ` fresh shuffled
//! mutations each, pick the best mutant `x'`, then build `⌈λ⌉` crossover
//! offspring by re-applying order-preserving subsamples of `x'`'s mutation list
//! to the parent. The best offspring replaces the parent if it is not worse.
//!
//! Mutants and offspring are never materialized: each list is applied to the
//! parent in place, evaluated incrementally, and undone.

use core::mem;

use rand::Rng;

use super::local::check_setup;
use super::policy::LambdaPolicy;
use super::run::{Accounting, RunOptions, RunResult};
use crate::mutation::{
    apply_list_with_delta, sample_crossover_size, sample_mutation_count, undo_list, MutationSampler,
};
use crate::{Error, HamProblem, MutationFamily, MutationList, Permutation, RandomSource, Result};

/// Per-iteration parameters: `λ' = ⌈λ⌉`, `p = λ/m` (capped at 1), `c = 1/λ`,
/// and the shared mutation count `ℓ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OllgaIterationParams {
    pub lambda: f64,
    pub lambda_prime: usize,
    pub mutation_rate: f64,
    pub crossover_bias: f64,
    pub ell: u64,
}

impl OllgaIterationParams {
    /// Derives the rates from `lambda` and draws `ℓ ~ [B(m, p) | ℓ > 0]`.
    pub fn sample(lambda: f64, family: &MutationFamily, rng: &mut RandomSource) -> Result<Self> {
        let mut params = Self::with_ell(lambda, family, 1)?;
        params.ell = sample_mutation_count(family.space_size(), params.mutation_rate, rng)?;
        Ok(params)
    }

    /// Same rates with a caller-chosen `ℓ`.
    pub fn with_ell(lambda: f64, family: &MutationFamily, ell: u64) -> Result<Self> {
        if !(lambda >= 1.0 && lambda.is_finite()) {
            return Err(Error::InvalidParameter("lambda must be a finite value >= 1"));
        }
        let m = family.space_size();
        if ell == 0 || ell > m {
            return Err(Error::CountOutOfRange { count: ell, max: m });
        }
        Ok(OllgaIterationParams {
            lambda,
            lambda_prime: libm::ceil(lambda) as usize,
            mutation_rate: (lambda / m as f64).min(1.0),
            crossover_bias: 1.0 / lambda,
            ell,
        })
    }
}

/// The parent and its fitness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OllgaState {
    parent: Permutation,
    fitness: usize,
}

impl OllgaState {
    pub fn new(problem: &HamProblem, parent: Permutation) -> Result<Self> {
        let fitness = problem.evaluate(&parent)?.value();
        Ok(OllgaState { parent, fitness })
    }

    pub fn parent(&self) -> &Permutation {
        &self.parent
    }

    pub fn fitness(&self) -> usize {
        self.fitness
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IterationOutcome {
    pub evaluations: u64,
    /// The selected offspring was strictly better than the parent.
    pub improved: bool,
    /// The optimum was evaluated during this iteration; the iteration stopped there.
    pub solved: bool,
}

/// Iteration engine holding scratch buffers so that the hot loop does not allocate.
pub struct Ollga<'p> {
    problem: &'p HamProblem,
    family: MutationFamily,
    sampler: MutationSampler,
    candidate: MutationList,
    best_mutant: MutationList,
    best_offspring: MutationList,
}

impl<'p> Ollga<'p> {
    pub fn new(problem: &'p HamProblem, family: MutationFamily) -> Result<Self> {
        if family.n() != problem.size() {
            return Err(Error::SizeMismatch { expected: problem.size(), found: family.n() });
        }
        Ok(Ollga {
            problem,
            family,
            sampler: MutationSampler::new(),
            candidate: MutationList::empty(),
            best_mutant: MutationList::empty(),
            best_offspring: MutationList::empty(),
        })
    }

    pub fn iterate(
        &mut self,
        state: &mut OllgaState,
        params: &OllgaIterationParams,
        rng: &mut RandomSource,
    ) -> Result<IterationOutcome> {
        if state.parent.len() != self.problem.size() {
            return Err(Error::SizeMismatch { expected: self.problem.size(), found: state.parent.len() });
        }
        if params.ell == 0 || params.ell > self.family.space_size() {
            return Err(Error::CountOutOfRange { count: params.ell, max: self.family.space_size() });
        }
        let n = self.problem.size() as i64;
        let target = self.problem.target_raw();
        let parent_fitness = state.fitness as i64;
        let x = state.parent.raw_mut();
        let mut evaluations = 0u64;

        // Phase 1: mutation.
        let mut best = i64::MIN;
        let mut ties = 0u64;
        for _ in 0..params.lambda_prime {
            self.sampler.sample_list_into(&self.family, params.ell, rng, &mut self.candidate)?;
            let fitness = parent_fitness + apply_list_with_delta(&self.candidate, x, target) as i64;
            evaluations += 1;
            if fitness == n {
                state.fitness = n as usize;
                return Ok(IterationOutcome { evaluations, improved: true, solved: true });
            }
            undo_list(&self.candidate, x);
            if take_candidate(fitness, &mut best, &mut ties, rng) {
                mem::swap(&mut self.candidate, &mut self.best_mutant);
            }
        }
        let mutant_fitness = best;

        // Phase 2: crossover by order-preserving subsampling of the winner's list.
        let ell = params.ell;
        let mut best = i64::MIN;
        let mut ties = 0u64;
        let mut winner_is_mutant = false;
        for _ in 0..params.lambda_prime {
            let s = sample_crossover_size(ell, params.crossover_bias, rng)?;
            if s == ell {
                // Identical to x'; its fitness is already known.
                if take_candidate(mutant_fitness, &mut best, &mut ties, rng) {
                    winner_is_mutant = true;
                }
                continue;
            }
            self.sampler.subsample_into(&self.best_mutant, s as usize, rng, &mut self.candidate)?;
            let fitness = parent_fitness + apply_list_with_delta(&self.candidate, x, target) as i64;
            evaluations += 1;
            if fitness == n {
                state.fitness = n as usize;
                return Ok(IterationOutcome { evaluations, improved: true, solved: true });
            }
            undo_list(&self.candidate, x);
            if take_candidate(fitness, &mut best, &mut ties, rng) {
                winner_is_mutant = false;
                mem::swap(&mut self.candidate, &mut self.best_offspring);
            }
        }

        // Selection.
        let improved = best > parent_fitness;
        if best >= parent_fitness {
            let winner = if winner_is_mutant { &self.best_mutant } else { &self.best_offspring };
            apply_list_with_delta(winner, x, target);
            state.fitness = best as usize;
        }
        Ok(IterationOutcome { evaluations, improved, solved: false })
    }
}

/// Reservoir step for "uniform among the maximal": returns whether the
/// candidate becomes the current winner.
#[inline]
fn take_candidate(fitness: i64, best: &mut i64, ties: &mut u64, rng: &mut RandomSource) -> bool {
    if fitness > *best {
        *best = fitness;
        *ties = 1;
        true
    } else if fitness == *best {
        *ties += 1;
        rng.random_range(0..*ties) == 0
    } else {
        false
    }
}

/// One iteration with a throwaway engine.
pub fn ollga_iteration(
    problem: &HamProblem,
    family: &MutationFamily,
    state: &mut OllgaState,
    params: &OllgaIterationParams,
    rng: &mut RandomSource,
) -> Result<IterationOutcome> {
    Ollga::new(problem, *family)?.iterate(state, params, rng)
}

/// A full run from a uniformly random start.
pub fn ollga_run(
    problem: &HamProblem,
    family: &MutationFamily,
    policy: &LambdaPolicy,
    rng: &mut RandomSource,
    options: RunOptions,
) -> Result<RunResult> {
    let start = Permutation::random(problem.size(), rng)?;
    ollga_run_from(problem, family, policy, start, rng, options)
}

pub fn ollga_run_from(
    problem: &HamProblem,
    family: &MutationFamily,
    policy: &LambdaPolicy,
    start: Permutation,
    rng: &mut RandomSource,
    options: RunOptions,
) -> Result<RunResult> {
    check_setup(problem, family, &start, &options)?;
    let n = problem.size();
    let mut policy = policy.clone();
    let mut engine = Ollga::new(problem, *family)?;
    let mut state = OllgaState::new(problem, start)?;
    let mut acct = Accounting::new(n, options.record_levels);

    while state.fitness < n && acct.evaluations < options.budget {
        let lambda = policy.lambda(n, state.fitness)?;
        let params = OllgaIterationParams::sample(lambda, family, rng)?;
        let distance = n - state.fitness;
        let outcome = engine.iterate(&mut state, &params, rng)?;
        acct.record(distance, outcome.evaluations, outcome.improved);
        policy.update(outcome.improved);
    }
    Ok(acct.finish(problem.fitness_value(state.fitness), rng.seed()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::MutationKind;

    fn setup(n: usize) -> (HamProblem, MutationFamily) {
        (HamProblem::identity(n).unwrap(), MutationFamily::exchange(n).unwrap())
    }

    #[test]
    fn params_follow_lambda() {
        let (_, f) = setup(10);
        let p = OllgaIterationParams::with_ell(2.5, &f, 3).unwrap();
        assert_eq!(p.lambda_prime, 3);
        assert!((p.mutation_rate - 2.5 / 45.0).abs() < 1e-15);
        assert!((p.crossover_bias - 0.4).abs() < 1e-15);
        assert!(OllgaIterationParams::with_ell(0.9, &f, 3).is_err());
        assert!(OllgaIterationParams::with_ell(2.0, &f, 46).is_err());
        let (_, tiny) = setup(2);
        assert_eq!(OllgaIterationParams::with_ell(2.0, &tiny, 1).unwrap().mutation_rate, 1.0);
    }

    #[test]
    fn single_mutation_costs_lambda_prime() {
        let (h, f) = setup(30);
        let mut rng = RandomSource::new(3);
        let mut engine = Ollga::new(&h, f).unwrap();
        for lambda in [1.0, 2.0, 3.5, 10.0] {
            let params = OllgaIterationParams::with_ell(lambda, &f, 1).unwrap();
            for _ in 0..200 {
                let mut state = OllgaState::new(&h, Permutation::random(30, &mut rng).unwrap()).unwrap();
                let out = engine.iterate(&mut state, &params, &mut rng).unwrap();
                if !out.solved {
                    assert_eq!(out.evaluations, params.lambda_prime as u64);
                }
            }
        }
    }

    #[test]
    fn lambda_one_is_a_single_evaluation() {
        let (h, f) = setup(25);
        let mut rng = RandomSource::new(4);
        for ell in 1..6 {
            let params = OllgaIterationParams::with_ell(1.0, &f, ell).unwrap();
            let mut state = OllgaState::new(&h, Permutation::random(25, &mut rng).unwrap()).unwrap();
            let out = ollga_iteration(&h, &f, &mut state, &params, &mut rng).unwrap();
            assert_eq!(out.evaluations, 1);
        }
    }

    #[test]
    fn optimal_parent_is_kept() {
        let (h, f) = setup(12);
        let mut rng = RandomSource::new(5);
        let opt = Permutation::identity(12).unwrap();
        let mut state = OllgaState::new(&h, opt.clone()).unwrap();
        for _ in 0..100 {
            let params = OllgaIterationParams::sample(4.0, &f, &mut rng).unwrap();
            let out = ollga_iteration(&h, &f, &mut state, &params, &mut rng).unwrap();
            assert!(!out.improved);
            assert_eq!(state.fitness(), 12);
        }
        assert_eq!(state.parent(), &opt);
    }

    #[test]
    fn iteration_invariants() {
        let (h, f) = setup(40);
        let mut rng = RandomSource::new(6);
        let mut engine = Ollga::new(&h, f).unwrap();
        let mut state = OllgaState::new(&h, Permutation::random(40, &mut rng).unwrap()).unwrap();
        for _ in 0..2000 {
            if state.fitness() == 40 {
                state = OllgaState::new(&h, Permutation::random(40, &mut rng).unwrap()).unwrap();
            }
            let lambda = rng.random_range(1.0..12.0);
            let params = OllgaIterationParams::sample(lambda, &f, &mut rng).unwrap();
            let before = state.fitness();
            let out = engine.iterate(&mut state, &params, &mut rng).unwrap();
            assert!(state.fitness() >= before);
            assert_eq!(out.improved, state.fitness() > before);
            assert_eq!(h.evaluate(state.parent()).unwrap().value(), state.fitness());
            let lp = params.lambda_prime as u64;
            assert!(out.evaluations <= 2 * lp);
            if !out.solved {
                assert!(out.evaluations >= lp);
            }
        }
    }

    #[test]
    fn runs_are_deterministic_and_accounted() {
        let (h, f) = setup(64);
        let policies = [
            LambdaPolicy::fixed(10.0).unwrap(),
            LambdaPolicy::StaticLog,
            LambdaPolicy::self_adjusting(1.5, 1.0, 64.0).unwrap(),
            LambdaPolicy::theoretical(0.4, 0.6).unwrap(),
        ];
        for policy in &policies {
            let options = RunOptions::with_budget(1 << 24).recording_levels();
            let a = ollga_run(&h, &f, policy, &mut RandomSource::new(8), options).unwrap();
            let b = ollga_run(&h, &f, policy, &mut RandomSource::new(8), options).unwrap();
            assert_eq!(a, b);
            assert!(a.finished, "{policy:?}");
            let levels = a.per_level.as_ref().unwrap();
            assert_eq!(levels.iter().map(|l| l.evaluations).sum::<u64>() + 1, a.evaluations);
            assert_eq!(levels.iter().map(|l| l.iterations).sum::<u64>(), a.iterations);
        }
    }

    #[test]
    fn start_at_optimum_costs_one() {
        let (h, f) = setup(16);
        let mut rng = RandomSource::new(9);
        let r = ollga_run_from(
            &h,
            &f,
            &LambdaPolicy::StaticLog,
            Permutation::identity(16).unwrap(),
            &mut rng,
            RunOptions::with_budget(10),
        )
        .unwrap();
        assert_eq!((r.evaluations, r.iterations, r.finished), (1, 0, true));
    }

    #[test]
    fn other_families_solve_small_instances() {
        for kind in [MutationKind::Reverse, MutationKind::Jump] {
            let h = HamProblem::identity(20).unwrap();
            let f = MutationFamily::new(kind, 20).unwrap();
            let r = ollga_run(
                &h,
                &f,
                &LambdaPolicy::fixed(3.0).unwrap(),
                &mut RandomSource::new(10),
                RunOptions::with_budget(1 << 24),
            )
            .unwrap();
            assert!(r.finished, "{kind:?}");
        }
    }

    #[test]
    fn non_identity_target_is_solved() {
        let mut rng = RandomSource::new(11);
        let target = Permutation::random(50, &mut rng).unwrap();
        let h = HamProblem::new(target.clone());
        let f = MutationFamily::exchange(50).unwrap();
        let r = ollga_run(&h, &f, &LambdaPolicy::StaticLog, &mut rng, RunOptions::with_budget(1 << 24)).unwrap();
        assert!(r.finished);
    }
}
