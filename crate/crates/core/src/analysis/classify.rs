use alloc::vec::Vec;

use super::Threshold;
use crate::{ElementaryMutation, Error, HamProblem, MutationKind, Permutation, Result};

/// Decides whether an iteration is good with respect to τ:
///
/// 1. exactly one mutant contains a mutation that improves the parent when
///    applied to it alone;
/// 2. in that mutant some such mutation exists whose positions no other
///    mutation of the list touches, and every other mutation changes the
///    fitness by at least τ as the list is applied in order;
/// 3. in every other mutant each mutation changes the fitness by at most τ
///    as the list is applied in order.
pub fn classify_iteration<L: AsRef<[ElementaryMutation]>>(
    problem: &HamProblem,
    parent: &Permutation,
    mutants: &[L],
    tau: Threshold,
) -> Result<bool> {
    if parent.len() != problem.size() {
        return Err(Error::SizeMismatch { expected: problem.size(), found: parent.len() });
    }
    if mutants.is_empty() {
        return Err(Error::PreconditionViolated("at least one mutant is required"));
    }
    let n = parent.len();
    for m in mutants.iter().flat_map(|l| l.as_ref()) {
        let (i, j) = m.positions();
        if i.max(j) > n {
            return Err(Error::InvalidPositions { i, j, n });
        }
    }
    let mut classifier = IterationClassifier::new(parent);
    Ok(classifier.classify(problem, mutants.iter().map(|l| l.as_ref()), tau))
}

/// Reusable classifier state for one parent.
#[derive(Clone, Debug)]
pub struct IterationClassifier {
    scratch: Vec<u32>,
    deltas: Vec<i32>,
    isolated_good: Vec<bool>,
    good_mutant: Option<usize>,
    fitness_changes: Vec<i64>,
}

impl IterationClassifier {
    pub fn new(parent: &Permutation) -> Self {
        IterationClassifier {
            scratch: parent.raw().to_vec(),
            deltas: Vec::new(),
            isolated_good: Vec::new(),
            good_mutant: None,
            fitness_changes: Vec::new(),
        }
    }

    /// Resets to a new parent of any size.
    pub fn set_parent(&mut self, parent: &Permutation) {
        self.scratch.clear();
        self.scratch.extend_from_slice(parent.raw());
    }

    /// Index of the good mutant after a `true` classification.
    pub fn good_mutant(&self) -> Option<usize> {
        self.good_mutant
    }

    /// Fitness change of each mutant relative to the parent. Complete only
    /// after a `true` classification.
    pub fn fitness_changes(&self) -> &[i64] {
        &self.fitness_changes
    }

    /// Caller guarantees every mutation fits the parent.
    pub fn classify<'a>(
        &mut self,
        problem: &HamProblem,
        mutants: impl IntoIterator<Item = &'a [ElementaryMutation]>,
        tau: Threshold,
    ) -> bool {
        let tau = tau.value();
        let target = problem.target_raw();
        self.good_mutant = None;
        self.fitness_changes.clear();

        for (k, list) in mutants.into_iter().enumerate() {
            // The scratch buffer holds the parent between mutants.
            self.isolated_good.clear();
            let mut any_good = false;
            for m in list {
                let good = m.apply_with_delta(&mut self.scratch, target) > 0;
                m.undo_raw(&mut self.scratch);
                any_good |= good;
                self.isolated_good.push(good);
            }

            self.deltas.clear();
            for m in list {
                self.deltas.push(m.apply_with_delta(&mut self.scratch, target));
            }
            for m in list.iter().rev() {
                m.undo_raw(&mut self.scratch);
            }
            self.fitness_changes.push(self.deltas.iter().map(|&d| d as i64).sum());

            if any_good {
                if self.good_mutant.is_some() || !self.has_isolated_witness(list, tau) {
                    self.good_mutant = None;
                    return false;
                }
                self.good_mutant = Some(k);
            } else if self.deltas.iter().any(|&d| d > tau) {
                self.good_mutant = None;
                return false;
            }
        }
        self.good_mutant.is_some()
    }

    fn has_isolated_witness(&self, list: &[ElementaryMutation], tau: i32) -> bool {
        (0..list.len())
            .filter(|&g| self.isolated_good[g])
            .any(|g| list.iter().enumerate().all(|(t, m)| t == g || (!overlaps(&list[g], m) && self.deltas[t] >= tau)))
    }
}

/// Whether two mutations share a position.
fn overlaps(a: &ElementaryMutation, b: &ElementaryMutation) -> bool {
    let (a0, a1) = a.raw_positions();
    let (b0, b1) = b.raw_positions();
    match (a.kind(), b.kind()) {
        (MutationKind::Exchange, MutationKind::Exchange) => a0 == b0 || a0 == b1 || a1 == b0 || a1 == b1,
        (MutationKind::Exchange, _) => b.touches(a0) || b.touches(a1),
        (_, MutationKind::Exchange) => a.touches(b0) || a.touches(b1),
        _ => a0.min(a1) <= b0.max(b1) && b0.min(b1) <= a0.max(a1),
    }
}
