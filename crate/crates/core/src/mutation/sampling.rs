//! Random mutation counts, mutation lists and order-preserving subsamples.

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::{Binomial, Distribution};

use super::{ElementaryMutation, MutationFamily, MutationList};
use crate::{Error, RandomSource, Result};

/// Rejections of a zero draw before switching to exact inversion.
const MAX_REJECTIONS: usize = 100;

/// Draws from `[X ~ B(trials, p) | X > 0]`.
///
/// Samples the plain binomial and rejects zeros; after 100 rejections it
/// falls back to inverting the conditional CDF.
pub fn sample_conditional_binomial(trials: u64, p: f64, rng: &mut RandomSource) -> Result<u64> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::InvalidProbability(p));
    }
    if trials == 0 {
        return Err(Error::CountOutOfRange { count: 0, max: 0 });
    }
    if p == 1.0 || trials == 1 {
        return Ok(trials);
    }
    let dist = Binomial::new(trials, p).map_err(|_| Error::InvalidProbability(p))?;
    for _ in 0..MAX_REJECTIONS {
        let k = dist.sample(rng);
        if k > 0 {
            return Ok(k);
        }
    }
    Ok(conditional_binomial_by_inversion(trials, p, rng))
}

pub(crate) fn conditional_binomial_by_inversion(trials: u64, p: f64, rng: &mut RandomSource) -> u64 {
    let log_q = libm::log1p(-p);
    let positive_mass = -libm::expm1(trials as f64 * log_q);
    let u: f64 = rng.random::<f64>() * positive_mass;
    let ratio = p / (1.0 - p);
    let mut pmf = trials as f64 * p * libm::exp((trials - 1) as f64 * log_q);
    let mut cumulative = pmf;
    let mut k = 1;
    while cumulative <= u && k < trials {
        pmf *= (trials - k) as f64 / (k + 1) as f64 * ratio;
        k += 1;
        cumulative += pmf;
    }
    k
}

/// Number of elementary mutations per mutant, `[ℓ ~ B(m, p) | ℓ > 0]`.
pub fn sample_mutation_count(m: u64, p: f64, rng: &mut RandomSource) -> Result<u64> {
    sample_conditional_binomial(m, p, rng)
}

/// Number of mutations taken by one crossover, `[s ~ B(ℓ, c) | s > 0]`.
pub fn sample_crossover_size(ell: u64, c: f64, rng: &mut RandomSource) -> Result<u64> {
    sample_conditional_binomial(ell, c, rng)
}

/// `ℓ` distinct mutations drawn uniformly from the family, in uniformly random order.
pub fn sample_mutation_list(family: &MutationFamily, ell: u64, rng: &mut RandomSource) -> Result<MutationList> {
    let mut out = MutationList::empty();
    MutationSampler::new().sample_list_into(family, ell, rng, &mut out)?;
    Ok(out)
}

/// A uniformly random `s`-subset of `ms`, kept in its original relative order.
pub fn subsample_preserving_order(ms: &MutationList, s: usize, rng: &mut RandomSource) -> Result<MutationList> {
    let mut out = MutationList::empty();
    MutationSampler::new().subsample_into(ms, s, rng, &mut out)?;
    Ok(out)
}

/// Reusable scratch space for the sampling hot paths.
#[derive(Clone, Debug, Default)]
pub struct MutationSampler {
    table: Vec<u64>,
    pool: Vec<u64>,
    picks: Vec<usize>,
}

impl MutationSampler {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn sample_list_into(
        &mut self,
        family: &MutationFamily,
        ell: u64,
        rng: &mut RandomSource,
        out: &mut MutationList,
    ) -> Result<()> {
        let m = family.space_size();
        if ell == 0 || ell > m {
            return Err(Error::CountOutOfRange { count: ell, max: m });
        }
        let items = out.items_mut();
        items.clear();
        if ell.saturating_mul(2) > m {
            // Dense case: partial Fisher-Yates over the whole space.
            self.pool.clear();
            self.pool.extend(0..m);
            for k in 0..ell as usize {
                let j = rng.random_range(k..m as usize);
                self.pool.swap(k, j);
                items.push(family.decode_unchecked(self.pool[k]));
            }
        } else if ell <= 16 {
            while items.len() < ell as usize {
                let code = rng.random_range(0..m);
                if !items.iter().any(|x| x.code == code) {
                    items.push(family.decode_unchecked(code));
                }
            }
        } else {
            let capacity = (4 * ell as usize).next_power_of_two();
            let shift = 64 - capacity.trailing_zeros();
            self.table.clear();
            self.table.resize(capacity, 0);
            while items.len() < ell as usize {
                let code = rng.random_range(0..m);
                let mut slot = (code.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15) >> shift) as usize;
                loop {
                    match self.table[slot] {
                        0 => {
                            self.table[slot] = code + 1;
                            items.push(family.decode_unchecked(code));
                            break;
                        }
                        v if v == code + 1 => break,
                        _ => slot = (slot + 1) & (capacity - 1),
                    }
                }
            }
        }
        // Explicit shuffle so the order never depends on how codes were generated.
        items.shuffle(rng);
        Ok(())
    }

    /// Same draw as [`sample_mutation_list`] but with replacement: each of the
    /// `ell` mutations is independently uniform over the family.
    pub fn sample_with_replacement_into(
        &mut self,
        family: &MutationFamily,
        ell: u64,
        rng: &mut RandomSource,
        out: &mut Vec<ElementaryMutation>,
    ) {
        let m = family.space_size();
        out.clear();
        out.extend((0..ell).map(|_| family.decode_unchecked(rng.random_range(0..m))));
    }

    pub fn subsample_into(
        &mut self,
        source: &[ElementaryMutation],
        s: usize,
        rng: &mut RandomSource,
        out: &mut MutationList,
    ) -> Result<()> {
        let len = source.len();
        if s == 0 || s > len {
            return Err(Error::CountOutOfRange { count: s as u64, max: len as u64 });
        }
        let items = out.items_mut();
        items.clear();
        if s == len {
            items.extend_from_slice(source);
        } else if s <= 8 {
            self.picks.clear();
            while self.picks.len() < s {
                let k = rng.random_range(0..len);
                if !self.picks.contains(&k) {
                    self.picks.push(k);
                }
            }
            self.picks.sort_unstable();
            items.extend(self.picks.iter().map(|&k| source[k]));
        } else {
            // Selection sampling: walk the list once, keeping each item with
            // probability needed / remaining.
            let mut needed = s;
            for (k, m) in source.iter().enumerate() {
                if rng.random_range(0..len - k) < needed {
                    items.push(*m);
                    needed -= 1;
                    if needed == 0 {
                        break;
                    }
                }
            }
        }
        Ok(())
    }
}
