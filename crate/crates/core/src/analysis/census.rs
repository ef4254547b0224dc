use crate::ham::exchange_delta;
use crate::{Error, HamProblem, Permutation, Result};

/// How many of the `n(n-1)/2` exchanges change the fitness by each delta in `-2..=2`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ExchangeCensus {
    counts: [u64; 5],
}

impl ExchangeCensus {
    pub fn count(&self, delta: i32) -> u64 {
        match delta {
            -2..=2 => self.counts[(delta + 2) as usize],
            _ => 0,
        }
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Exchanges that strictly improve the fitness.
    pub fn improving(&self) -> u64 {
        self.count(1) + self.count(2)
    }

    /// `Σ max(0, delta)` over all exchanges; equals the distance `d`.
    pub fn positive_mass(&self) -> u64 {
        self.count(1) + 2 * self.count(2)
    }

    /// Mean fitness gain of one uniform exchange, counting improvements only.
    pub fn expected_improvement(&self) -> f64 {
        self.positive_mass() as f64 / self.total() as f64
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, u64)> + '_ {
        self.counts.iter().enumerate().map(|(k, &c)| (k as i32 - 2, c))
    }
}

/// Applies every exchange to `x` in isolation and tallies the fitness changes.
pub fn enumerate_exchange_effects(problem: &HamProblem, x: &Permutation) -> Result<ExchangeCensus> {
    let n = problem.size();
    if n < 2 {
        return Err(Error::InvalidSize { n, min: 2 });
    }
    if x.len() != n {
        return Err(Error::SizeMismatch { expected: n, found: x.len() });
    }
    let (xs, ts) = (x.raw(), problem.target_raw());
    let mut census = ExchangeCensus::default();
    for a in 0..n {
        for b in a + 1..n {
            census.counts[(exchange_delta(xs, ts, a, b) + 2) as usize] += 1;
        }
    }
    Ok(census)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn census_examples() {
        let h = HamProblem::identity(4).unwrap();
        let c = enumerate_exchange_effects(&h, &Permutation::identity(4).unwrap()).unwrap();
        assert_eq!(c.count(-2), 6);
        assert_eq!(c.total(), 6);

        let h = HamProblem::identity(3).unwrap();
        let c = enumerate_exchange_effects(&h, &Permutation::from_one_based(&[2, 3, 1]).unwrap()).unwrap();
        assert_eq!(c.count(1), 3);
        assert_eq!(c.total(), 3);
        // Every exchange gains exactly 1: mean 1 = 2·3/(3·2).
        assert_eq!(c.expected_improvement(), 1.0);
        assert_eq!(c.iter().filter(|&(_, k)| k > 0).count(), 1);
    }

    #[test]
    fn rejects_mismatched_sizes() {
        let h = HamProblem::identity(3).unwrap();
        assert!(enumerate_exchange_effects(&h, &Permutation::identity(4).unwrap()).is_err());
        let h = HamProblem::identity(1).unwrap();
        assert!(enumerate_exchange_effects(&h, &Permutation::identity(1).unwrap()).is_err());
    }
}
