//! Elementary mutations on permutations and ordered lists of them.
//!
//! Every family enumerates its mutation space `M` with a fixed integer codec,
//! so a mutant is fully described by the list of codes applied to its parent.

mod sampling;

use alloc::vec::Vec;
use core::ops::Deref;

use crate::ham::exchange_delta;
use crate::{Error, Permutation, Result};

pub use sampling::{
    sample_conditional_binomial, sample_crossover_size, sample_mutation_count, sample_mutation_list,
    subsample_preserving_order, MutationSampler,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MutationKind {
    /// Swap the values at positions `i < j`.
    Exchange,
    /// Reverse the closed segment `[i..j]`, `i < j`.
    Reverse,
    /// Remove the value at `i` and reinsert it so that it lands at `j`;
    /// values in between shift one step toward `i`.
    Jump,
}

/// A mutation family for a fixed problem size, together with its space size `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MutationFamily {
    kind: MutationKind,
    n: usize,
    size: u64,
}

/// Number of elementary mutations of `kind` for size `n`.
///
/// Exchange and reverse use unordered pairs, `n(n-1)/2`; jump uses ordered
/// pairs, `n(n-1)`.
pub fn mutation_space_size(kind: MutationKind, n: usize) -> Result<u64> {
    if n < 2 {
        return Err(Error::InvalidSize { n, min: 2 });
    }
    let pairs = n as u64 * (n as u64 - 1);
    Ok(match kind {
        MutationKind::Exchange | MutationKind::Reverse => pairs / 2,
        MutationKind::Jump => pairs,
    })
}

impl MutationFamily {
    pub fn new(kind: MutationKind, n: usize) -> Result<Self> {
        if n > u32::MAX as usize {
            return Err(Error::InvalidParameter("problem size does not fit in 32 bits"));
        }
        let size = mutation_space_size(kind, n)?;
        Ok(MutationFamily { kind, n, size })
    }

    pub fn exchange(n: usize) -> Result<Self> {
        Self::new(MutationKind::Exchange, n)
    }

    pub fn kind(&self) -> MutationKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `m = |M|`.
    pub fn space_size(&self) -> u64 {
        self.size
    }

    pub fn decode(&self, code: u64) -> Result<ElementaryMutation> {
        if code >= self.size {
            return Err(Error::CodeOutOfRange { code, size: self.size });
        }
        Ok(self.decode_unchecked(code))
    }

    /// Mutation for the 1-based position pair `(i, j)`.
    pub fn encode(&self, i: usize, j: usize) -> Result<ElementaryMutation> {
        let n = self.n;
        let valid = match self.kind {
            MutationKind::Exchange | MutationKind::Reverse => 1 <= i && i < j && j <= n,
            MutationKind::Jump => 1 <= i && i <= n && 1 <= j && j <= n && i != j,
        };
        if !valid {
            return Err(Error::InvalidPositions { i, j, n });
        }
        let (a, b) = ((i - 1) as u64, (j - 1) as u64);
        let n = n as u64;
        let code = match self.kind {
            MutationKind::Exchange | MutationKind::Reverse => row_offset(a, n) + (b - a - 1),
            MutationKind::Jump => a * (n - 1) + if b < a { b } else { b - 1 },
        };
        Ok(ElementaryMutation { kind: self.kind, code, a: a as u32, b: b as u32 })
    }

    #[inline]
    pub(crate) fn decode_unchecked(&self, code: u64) -> ElementaryMutation {
        let n = self.n as u64;
        let (a, b) = match self.kind {
            MutationKind::Exchange | MutationKind::Reverse => decode_pair(code, n),
            MutationKind::Jump => {
                let a = code / (n - 1);
                let r = code % (n - 1);
                (a, if r < a { r } else { r + 1 })
            }
        };
        ElementaryMutation { kind: self.kind, code, a: a as u32, b: b as u32 }
    }
}

/// First code of row `a` in the lexicographic enumeration of pairs `a < b`.
#[inline]
fn row_offset(a: u64, n: u64) -> u64 {
    a * (2 * n - a - 1) / 2
}

#[inline]
fn decode_pair(code: u64, n: u64) -> (u64, u64) {
    // Largest row a with row_offset(a) <= code, seeded by the closed form and
    // corrected for floating point error.
    let k = (2 * n - 1) as f64;
    let guess = (k - libm::sqrt(k * k - 8.0 * code as f64)) / 2.0;
    let mut a = (libm::floor(guess).max(0.0) as u64).min(n - 2);
    while a > 0 && row_offset(a, n) > code {
        a -= 1;
    }
    while a + 1 < n - 1 && row_offset(a + 1, n) <= code {
        a += 1;
    }
    (a, code - row_offset(a, n) + a + 1)
}

/// One encoded local move. Carries its code and its decoded position pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ElementaryMutation {
    kind: MutationKind,
    code: u64,
    a: u32,
    b: u32,
}

impl ElementaryMutation {
    pub fn kind(&self) -> MutationKind {
        self.kind
    }

    pub fn code(&self) -> u64 {
        self.code
    }

    /// The 1-based `(i, j)` pair. `i < j` for exchange and reverse.
    pub fn positions(&self) -> (usize, usize) {
        (self.a as usize + 1, self.b as usize + 1)
    }

    #[inline]
    pub(crate) fn raw_positions(&self) -> (usize, usize) {
        (self.a as usize, self.b as usize)
    }

    /// Whether this mutation changes or reads 0-based position `p`.
    #[inline]
    pub(crate) fn touches(&self, p: usize) -> bool {
        let (a, b) = self.raw_positions();
        match self.kind {
            MutationKind::Exchange => p == a || p == b,
            MutationKind::Reverse | MutationKind::Jump => a.min(b) <= p && p <= a.max(b),
        }
    }

    fn fits(&self, n: usize) -> bool {
        (self.a.max(self.b) as usize) < n
    }

    /// Applies the mutation in place.
    pub fn apply(&self, x: &mut Permutation) -> Result<()> {
        if !self.fits(x.len()) {
            let (i, j) = self.positions();
            return Err(Error::InvalidPositions { i, j, n: x.len() });
        }
        self.apply_raw(x.raw_mut());
        Ok(())
    }

    #[inline]
    pub(crate) fn apply_raw(&self, x: &mut [u32]) {
        let (a, b) = self.raw_positions();
        match self.kind {
            MutationKind::Exchange => x.swap(a, b),
            MutationKind::Reverse => x[a..=b].reverse(),
            MutationKind::Jump if a < b => x[a..=b].rotate_left(1),
            MutationKind::Jump => x[b..=a].rotate_right(1),
        }
    }

    /// Reverts `apply_raw`.
    #[inline]
    pub(crate) fn undo_raw(&self, x: &mut [u32]) {
        let (a, b) = self.raw_positions();
        match self.kind {
            MutationKind::Exchange => x.swap(a, b),
            MutationKind::Reverse => x[a..=b].reverse(),
            MutationKind::Jump if a < b => x[a..=b].rotate_right(1),
            MutationKind::Jump => x[b..=a].rotate_left(1),
        }
    }

    /// Applies in place and returns the `Ham` fitness change against `target`.
    #[inline]
    pub(crate) fn apply_with_delta(&self, x: &mut [u32], target: &[u32]) -> i32 {
        let (a, b) = self.raw_positions();
        if self.kind == MutationKind::Exchange {
            let d = exchange_delta(x, target, a, b);
            x.swap(a, b);
            return d;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        let matches = |x: &[u32]| x[lo..=hi].iter().zip(&target[lo..=hi]).filter(|(u, v)| u == v).count() as i32;
        let before = matches(x);
        self.apply_raw(x);
        matches(x) - before
    }
}

/// An ordered list of distinct elementary mutations; the difference-based
/// description of a mutant. Order matters: application is sequential.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MutationList {
    items: Vec<ElementaryMutation>,
}

impl MutationList {
    pub fn new(items: Vec<ElementaryMutation>) -> Result<Self> {
        for (k, m) in items.iter().enumerate() {
            if items[..k].iter().any(|o| o.code == m.code) {
                return Err(Error::DuplicateMutation(m.code));
            }
        }
        Ok(MutationList { items })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn codes(&self) -> impl Iterator<Item = u64> + '_ {
        self.items.iter().map(|m| m.code)
    }

    pub fn into_vec(self) -> Vec<ElementaryMutation> {
        self.items
    }

    pub(crate) fn items_mut(&mut self) -> &mut Vec<ElementaryMutation> {
        &mut self.items
    }
}

impl Deref for MutationList {
    type Target = [ElementaryMutation];

    fn deref(&self) -> &[ElementaryMutation] {
        &self.items
    }
}

impl AsRef<[ElementaryMutation]> for MutationList {
    fn as_ref(&self) -> &[ElementaryMutation] {
        &self.items
    }
}

pub fn apply_mutation(x: &Permutation, mu: &ElementaryMutation) -> Result<Permutation> {
    let mut y = x.clone();
    mu.apply(&mut y)?;
    Ok(y)
}

/// Applies `ms` left to right.
pub fn apply_mutation_list(x: &Permutation, ms: &[ElementaryMutation]) -> Result<Permutation> {
    let mut y = x.clone();
    for m in ms {
        m.apply(&mut y)?;
    }
    Ok(y)
}

/// Applies `ms` in place, returning the summed fitness change.
#[inline]
pub(crate) fn apply_list_with_delta(ms: &[ElementaryMutation], x: &mut [u32], target: &[u32]) -> i32 {
    ms.iter().map(|m| m.apply_with_delta(x, target)).sum()
}

#[inline]
pub(crate) fn undo_list(ms: &[ElementaryMutation], x: &mut [u32]) {
    for m in ms.iter().rev() {
        m.undo_raw(x);
    }
}
