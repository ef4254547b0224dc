use alloc::vec::Vec;
use core::fmt;

use rand::seq::SliceRandom;

use crate::{Error, RandomSource, Result};

/// A bijection on `1..=n`, `n >= 1`.
///
/// Values are stored 0-based; every public accessor speaks 1-based positions
/// and values.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    elems: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Result<Self> {
        check_size(n)?;
        Ok(Permutation { elems: (0..n as u32).collect() })
    }

    /// Builds a permutation from 1-based values, e.g. `[2, 3, 1]`.
    pub fn from_one_based(values: &[usize]) -> Result<Self> {
        check_size(values.len())?;
        let n = values.len();
        let mut seen = alloc::vec![false; n];
        let mut elems = Vec::with_capacity(n);
        for &v in values {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::NotAPermutation);
            }
            seen[v - 1] = true;
            elems.push((v - 1) as u32);
        }
        Ok(Permutation { elems })
    }

    pub(crate) fn from_zero_based_unchecked(elems: Vec<u32>) -> Self {
        debug_assert!(is_bijection(&elems));
        Permutation { elems }
    }

    /// Uniformly random permutation of size `n` (Fisher-Yates).
    pub fn random(n: usize, rng: &mut RandomSource) -> Result<Self> {
        let mut p = Self::identity(n)?;
        p.elems.shuffle(rng);
        Ok(p)
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    /// Value at 1-based `position`.
    pub fn get(&self, position: usize) -> Option<usize> {
        position.checked_sub(1).and_then(|p| self.elems.get(p)).map(|&v| v as usize + 1)
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.elems.iter().map(|&v| v as usize + 1).collect()
    }

    /// Exchanges the values at 1-based positions `i` and `j`.
    pub fn swap(&mut self, i: usize, j: usize) -> Result<()> {
        let n = self.len();
        if i == 0 || j == 0 || i > n || j > n {
            return Err(Error::InvalidPositions { i, j, n });
        }
        self.elems.swap(i - 1, j - 1);
        Ok(())
    }

    /// Applies `sigma` to every value: the result maps `i` to `sigma(self(i))`.
    pub fn relabel(&self, sigma: &Permutation) -> Result<Self> {
        if sigma.len() != self.len() {
            return Err(Error::SizeMismatch { expected: self.len(), found: sigma.len() });
        }
        let elems = self.elems.iter().map(|&v| sigma.elems[v as usize]).collect();
        Ok(Permutation { elems })
    }

    pub fn inverse(&self) -> Self {
        let mut inv = alloc::vec![0u32; self.len()];
        for (i, &v) in self.elems.iter().enumerate() {
            inv[v as usize] = i as u32;
        }
        Permutation { elems: inv }
    }

    #[inline]
    pub(crate) fn raw(&self) -> &[u32] {
        &self.elems
    }

    #[inline]
    pub(crate) fn raw_mut(&mut self) -> &mut [u32] {
        &mut self.elems
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.elems.iter().map(|&v| v + 1)).finish()
    }
}

/// Uniformly random permutation of `1..=n`.
pub fn random_permutation(n: usize, rng: &mut RandomSource) -> Result<Permutation> {
    Permutation::random(n, rng)
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 || n > u32::MAX as usize {
        return Err(Error::InvalidSize { n, min: 1 });
    }
    Ok(())
}

fn is_bijection(elems: &[u32]) -> bool {
    let mut seen = alloc::vec![false; elems.len()];
    elems.iter().all(|&v| {
        let v = v as usize;
        v < seen.len() && !core::mem::replace(&mut seen[v], true)
    })
}
