use alloc::vec::Vec;

use rand::seq::{index, SliceRandom};

use super::{IterationClassifier, IterationModel, SamplingMode, Threshold};
use crate::mutation::MutationSampler;
use crate::{ElementaryMutation, Error, HamProblem, MutationFamily, MutationList, Permutation, RandomSource, Result};

/// Two-sided 99% standard normal quantile.
pub const Z_99: f64 = 2.575_829_303_548_900_4;

/// Which parent a trial starts from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ParentShape {
    /// [`canonical_parent`]: the same parent in every trial.
    Cycle,
    /// A fresh uniformly random parent at distance `n - f` in every trial.
    RandomAtDistance,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GoodIterationEstimate {
    pub trials: u64,
    pub good: u64,
    pub estimate: f64,
    /// Normal-approximation 99% half-width.
    pub half_width: f64,
    /// Good iterations whose good mutant was not strictly fitter than every
    /// other mutant. Always 0 unless the classifier is wrong.
    pub dominance_violations: u64,
}

/// Parent at fitness `f` against the identity: positions `1..=d`, `d = n - f`,
/// form a single cycle (`i -> i + 1`, `d -> 1`), the rest are fixed.
pub fn canonical_parent(n: usize, f: usize) -> Result<Permutation> {
    if f > n {
        return Err(Error::InvalidFitness { value: f, n });
    }
    let d = n - f;
    if d == 1 {
        return Err(Error::UnreachableFitness { f, n });
    }
    let mut elems: Vec<u32> = (0..n as u32).collect();
    for (i, e) in elems.iter_mut().take(d).enumerate() {
        *e = ((i + 1) % d) as u32;
    }
    if n == 0 {
        return Err(Error::InvalidSize { n, min: 1 });
    }
    Ok(Permutation::from_zero_based_unchecked(elems))
}

/// Uniformly random permutation with exactly `d` positions differing from the identity.
pub fn random_parent_at_distance(n: usize, d: usize, rng: &mut RandomSource) -> Result<Permutation> {
    if n == 0 {
        return Err(Error::InvalidSize { n, min: 1 });
    }
    if d > n {
        return Err(Error::InvalidFitness { value: 0, n });
    }
    if d == 1 {
        return Err(Error::UnreachableFitness { f: n - 1, n });
    }
    let positions = index::sample(rng, n, d).into_vec();
    let mut values = positions.clone();
    // Rejection sampling of a derangement of the chosen positions.
    while values.iter().zip(&positions).any(|(v, p)| v == p) {
        values.shuffle(rng);
    }
    let mut elems: Vec<u32> = (0..n as u32).collect();
    for (&p, &v) in positions.iter().zip(&values) {
        elems[p] = v as u32;
    }
    Ok(Permutation::from_zero_based_unchecked(elems))
}

/// Monte-Carlo estimate of the probability that an iteration described by
/// `model` is good with respect to `tau` on `Ham` with the identity target.
pub fn estimate_good_probability(
    model: &IterationModel,
    tau: Threshold,
    trials: u64,
    shape: ParentShape,
    rng: &mut RandomSource,
) -> Result<GoodIterationEstimate> {
    if trials == 0 {
        return Err(Error::InvalidParameter("at least one trial is required"));
    }
    let IterationModel { n, f, lambda, ell, mode } = *model;
    let problem = HamProblem::identity(n)?;
    let family = MutationFamily::exchange(n)?;
    let mut parent = canonical_parent(n, f)?;
    let mut classifier = IterationClassifier::new(&parent);
    let mut sampler = MutationSampler::new();
    let mut distinct = MutationList::empty();
    let mut mutants: Vec<Vec<ElementaryMutation>> = (0..lambda).map(|_| Vec::with_capacity(ell)).collect();
    let mut good = 0u64;
    let mut dominance_violations = 0u64;

    for _ in 0..trials {
        if shape == ParentShape::RandomAtDistance {
            parent = random_parent_at_distance(n, n - f, rng)?;
            classifier.set_parent(&parent);
        }
        for mutant in &mut mutants {
            match mode {
                SamplingMode::WithReplacement => {
                    sampler.sample_with_replacement_into(&family, ell as u64, rng, mutant);
                }
                SamplingMode::WithoutReplacement => {
                    sampler.sample_list_into(&family, ell as u64, rng, &mut distinct)?;
                    mutant.clear();
                    mutant.extend_from_slice(&distinct);
                }
            }
        }
        if classifier.classify(&problem, mutants.iter().map(Vec::as_slice), tau) {
            good += 1;
            let winner = classifier.good_mutant().expect("good iteration has a good mutant");
            let changes = classifier.fitness_changes();
            if changes.iter().enumerate().any(|(k, &c)| k != winner && c >= changes[winner]) {
                dominance_violations += 1;
            }
        }
    }

    let estimate = good as f64 / trials as f64;
    let half_width = Z_99 * libm::sqrt(estimate * (1.0 - estimate) / trials as f64);
    Ok(GoodIterationEstimate { trials, good, estimate, half_width, dominance_violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{enumerate_exchange_effects, good_iteration_bound};

    #[test]
    fn canonical_parent_has_requested_fitness() {
        for n in 2..30 {
            let h = HamProblem::identity(n).unwrap();
            for f in 0..=n {
                match canonical_parent(n, f) {
                    Ok(p) => assert_eq!(h.evaluate(&p).unwrap().value(), f),
                    Err(e) => assert_eq!((f, e), (n - 1, Error::UnreachableFitness { f, n })),
                }
            }
        }
        assert_eq!(canonical_parent(4, 0).unwrap().to_one_based(), [2, 3, 4, 1]);
    }

    #[test]
    fn random_parent_has_requested_distance() {
        let mut rng = RandomSource::new(1);
        let h = HamProblem::identity(12).unwrap();
        for d in [0, 2, 3, 7, 12] {
            for _ in 0..20 {
                let p = random_parent_at_distance(12, d, &mut rng).unwrap();
                assert_eq!(h.evaluate(&p).unwrap().distance(), d);
            }
        }
        assert!(random_parent_at_distance(12, 1, &mut rng).is_err());
    }

    #[test]
    fn two_element_parent_is_always_good() {
        let model = IterationModel::new(2, 0, 1, 1, SamplingMode::WithReplacement).unwrap();
        let mut rng = RandomSource::new(2);
        for tau in Threshold::ALL {
            let e = estimate_good_probability(&model, tau, 1000, ParentShape::Cycle, &mut rng).unwrap();
            assert_eq!(e.estimate, 1.0);
            assert_eq!(e.half_width, 0.0);
        }
    }

    #[test]
    fn single_mutation_matches_census() {
        // λ = ℓ = 1, τ = 0: good iff the one exchange improves the parent.
        let n = 4;
        let parent = canonical_parent(n, 0).unwrap();
        let census = enumerate_exchange_effects(&HamProblem::identity(n).unwrap(), &parent).unwrap();
        let exact = census.improving() as f64 / census.total() as f64;
        assert_eq!(census.improving(), 4);
        let model = IterationModel::new(n, 0, 1, 1, SamplingMode::WithReplacement).unwrap();
        let e =
            estimate_good_probability(&model, Threshold::Zero, 200_000, ParentShape::Cycle, &mut RandomSource::new(3))
                .unwrap();
        assert!((e.estimate - exact).abs() <= e.half_width, "{} vs {exact}", e.estimate);
    }

    #[test]
    fn unreachable_fitness_is_an_error() {
        let model = IterationModel::new(10, 9, 1, 1, SamplingMode::WithReplacement).unwrap();
        let r =
            estimate_good_probability(&model, Threshold::MinusTwo, 10, ParentShape::Cycle, &mut RandomSource::new(4));
        assert_eq!(r, Err(Error::UnreachableFitness { f: 9, n: 10 }));
        let model = IterationModel::new(10, 3, 1, 1, SamplingMode::WithReplacement).unwrap();
        assert!(estimate_good_probability(&model, Threshold::Zero, 0, ParentShape::Cycle, &mut RandomSource::new(4))
            .is_err());
    }

    #[test]
    fn quick_soundness_and_dominance() {
        let mut rng = RandomSource::new(5);
        for (f, tau) in [(0, Threshold::Zero), (10, Threshold::MinusOne), (17, Threshold::MinusTwo)] {
            for k in [1, 2, 3] {
                for mode in [SamplingMode::WithReplacement, SamplingMode::WithoutReplacement] {
                    for shape in [ParentShape::Cycle, ParentShape::RandomAtDistance] {
                        let model = IterationModel::new(20, f, k, k, mode).unwrap();
                        let e = estimate_good_probability(&model, tau, 20_000, shape, &mut rng).unwrap();
                        assert_eq!(e.dominance_violations, 0);
                        if mode == SamplingMode::WithReplacement {
                            let b = good_iteration_bound(&model, tau).unwrap();
                            assert!(e.estimate + e.half_width >= b, "{model:?} {tau}: {} < {b}", e.estimate);
                        }
                    }
                }
            }
        }
    }
}
