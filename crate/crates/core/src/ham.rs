//! The `Ham_p` fitness: the number of positions where a candidate agrees with
//! a hidden target permutation `p`. Plain `Ham` is the identity target.

use crate::{Error, Permutation, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HamProblem {
    target: Permutation,
}

/// Number of fixed positions, in `0..=n`. The distance to the optimum is `n - value`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FitnessValue {
    value: usize,
    n: usize,
}

impl FitnessValue {
    pub fn new(value: usize, n: usize) -> Result<Self> {
        if value > n {
            return Err(Error::InvalidFitness { value, n });
        }
        Ok(FitnessValue { value, n })
    }

    pub fn value(self) -> usize {
        self.value
    }

    pub fn distance(self) -> usize {
        self.n - self.value
    }

    pub fn is_optimal(self) -> bool {
        self.value == self.n
    }
}

impl HamProblem {
    pub fn new(target: Permutation) -> Self {
        HamProblem { target }
    }

    /// Plain `Ham`: the target is the sorted permutation.
    pub fn identity(n: usize) -> Result<Self> {
        Ok(HamProblem { target: Permutation::identity(n)? })
    }

    pub fn size(&self) -> usize {
        self.target.len()
    }

    pub fn target(&self) -> &Permutation {
        &self.target
    }

    pub fn evaluate(&self, x: &Permutation) -> Result<FitnessValue> {
        self.check(x)?;
        Ok(FitnessValue { value: self.fitness_raw(x.raw()), n: self.size() })
    }

    /// Fitness change caused by exchanging 1-based positions `i < j` of `x`.
    pub fn delta_exchange(&self, x: &Permutation, i: usize, j: usize) -> Result<i32> {
        self.check(x)?;
        let n = self.size();
        if i == 0 || i >= j || j > n {
            return Err(Error::InvalidPositions { i, j, n });
        }
        Ok(exchange_delta(x.raw(), self.target.raw(), i - 1, j - 1))
    }

    pub(crate) fn fitness_raw(&self, x: &[u32]) -> usize {
        x.iter().zip(self.target.raw()).filter(|(a, b)| a == b).count()
    }

    #[inline]
    pub(crate) fn target_raw(&self) -> &[u32] {
        self.target.raw()
    }

    pub(crate) fn fitness_value(&self, value: usize) -> FitnessValue {
        debug_assert!(value <= self.size());
        FitnessValue { value, n: self.size() }
    }

    fn check(&self, x: &Permutation) -> Result<()> {
        if x.len() != self.size() {
            return Err(Error::SizeMismatch { expected: self.size(), found: x.len() });
        }
        Ok(())
    }
}

/// O(1) fitness change of swapping 0-based positions `a` and `b`.
#[inline(always)]
pub(crate) fn exchange_delta(x: &[u32], target: &[u32], a: usize, b: usize) -> i32 {
    let (xa, xb, ta, tb) = (x[a], x[b], target[a], target[b]);
    (xb == ta) as i32 + (xa == tb) as i32 - (xa == ta) as i32 - (xb == tb) as i32
}

pub fn ham_evaluate(problem: &HamProblem, x: &Permutation) -> Result<FitnessValue> {
    problem.evaluate(x)
}

pub fn ham_delta_exchange(problem: &HamProblem, x: &Permutation, i: usize, j: usize) -> Result<i32> {
    problem.delta_exchange(x, i, j)
}
