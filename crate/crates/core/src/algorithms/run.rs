use alloc::vec;
use alloc::vec::Vec;

use crate::FitnessValue;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunOptions {
    /// Evaluation cap, checked between iterations. Must be at least 1.
    pub budget: u64,
    /// Keep per-distance cost accounting in the result.
    pub record_levels: bool,
}

impl RunOptions {
    pub fn with_budget(budget: u64) -> Self {
        RunOptions { budget, record_levels: false }
    }

    pub fn recording_levels(mut self) -> Self {
        self.record_levels = true;
        self
    }
}

/// What a run spent while its parent sat at one distance from the optimum.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LevelCost {
    pub evaluations: u64,
    pub iterations: u64,
    /// 1 if the parent left this level by a strict improvement, else 0.
    pub improvements: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunResult {
    /// Fitness evaluations, including the one for the initial permutation.
    pub evaluations: u64,
    pub iterations: u64,
    pub final_fitness: FitnessValue,
    /// Whether the optimum was found within the budget.
    pub finished: bool,
    pub seed: u64,
    /// Indexed by distance `n - f`; attributed to the level each iteration began at.
    pub per_level: Option<Vec<LevelCost>>,
}

pub(crate) struct Accounting {
    pub evaluations: u64,
    pub iterations: u64,
    levels: Option<Vec<LevelCost>>,
}

impl Accounting {
    pub fn new(n: usize, record_levels: bool) -> Self {
        Accounting { evaluations: 1, iterations: 0, levels: record_levels.then(|| vec![LevelCost::default(); n + 1]) }
    }

    #[inline]
    pub fn record(&mut self, distance: usize, evaluations: u64, improved: bool) {
        self.evaluations += evaluations;
        self.iterations += 1;
        if let Some(levels) = &mut self.levels {
            let level = &mut levels[distance];
            level.evaluations += evaluations;
            level.iterations += 1;
            level.improvements += improved as u64;
        }
    }

    pub fn finish(self, final_fitness: FitnessValue, seed: u64) -> RunResult {
        RunResult {
            evaluations: self.evaluations,
            iterations: self.iterations,
            final_fitness,
            finished: final_fitness.is_optimal(),
            seed,
            per_level: self.levels,
        }
    }
}
