use ollga_core::analysis::enumerate_exchange_effects;
use ollga_core::mutation::{apply_mutation, apply_mutation_list, sample_mutation_list, subsample_preserving_order};
use ollga_core::{HamProblem, MutationFamily, MutationKind, Permutation, RandomSource};
use proptest::prelude::*;

fn kind() -> impl Strategy<Value = MutationKind> {
    prop_oneof![Just(MutationKind::Exchange), Just(MutationKind::Reverse), Just(MutationKind::Jump)]
}

fn perm(n: usize, seed: u64) -> Permutation {
    Permutation::random(n, &mut RandomSource::new(seed)).unwrap()
}

proptest! {
    #[test]
    fn codec_round_trips(kind in kind(), n in 2usize..5000, raw in any::<u64>()) {
        let family = MutationFamily::new(kind, n).unwrap();
        let code = raw % family.space_size();
        let mu = family.decode(code).unwrap();
        let (i, j) = mu.positions();
        prop_assert!(i >= 1 && j >= 1 && i <= n && j <= n && i != j);
        prop_assert_eq!(family.encode(i, j).unwrap(), mu);
        prop_assert!(family.decode(family.space_size()).is_err());
    }

    #[test]
    fn exchange_delta_agrees_with_full_evaluation(n in 2usize..80, s1 in any::<u64>(), s2 in any::<u64>(), a in any::<usize>(), b in any::<usize>()) {
        let problem = HamProblem::new(perm(n, s1));
        let x = perm(n, s2);
        let (i, j) = (a % n + 1, b % n + 1);
        prop_assume!(i < j);
        let mut y = x.clone();
        y.swap(i, j).unwrap();
        let expected = problem.evaluate(&y).unwrap().value() as i32 - problem.evaluate(&x).unwrap().value() as i32;
        prop_assert_eq!(problem.delta_exchange(&x, i, j).unwrap(), expected);
    }

    #[test]
    fn mutations_keep_a_permutation(kind in kind(), n in 2usize..60, seed in any::<u64>(), ell in 1u64..20) {
        let family = MutationFamily::new(kind, n).unwrap();
        let mut rng = RandomSource::new(seed);
        let ell = ell.min(family.space_size());
        let list = sample_mutation_list(&family, ell, &mut rng).unwrap();
        prop_assert_eq!(list.len() as u64, ell);
        let x = Permutation::random(n, &mut rng).unwrap();
        let y = apply_mutation_list(&x, &list).unwrap();
        prop_assert!(Permutation::from_one_based(&y.to_one_based()).is_ok());

        let sub = subsample_preserving_order(&list, (list.len() / 2).max(1), &mut rng).unwrap();
        let mut pos = 0;
        for mu in sub.iter() {
            pos += list[pos..].iter().position(|m| m == mu).expect("subsequence") + 1;
        }
    }

    #[test]
    fn exchange_and_reverse_pairs_are_involutions(n in 2usize..60, seed in any::<u64>(), raw in any::<u64>()) {
        for kind in [MutationKind::Exchange, MutationKind::Reverse] {
            let family = MutationFamily::new(kind, n).unwrap();
            let mu = family.decode(raw % family.space_size()).unwrap();
            let x = perm(n, seed);
            prop_assert_eq!(apply_mutation(&apply_mutation(&x, &mu).unwrap(), &mu).unwrap(), x);
        }
    }

    #[test]
    fn jump_is_undone_by_the_opposite_jump(n in 2usize..60, seed in any::<u64>(), raw in any::<u64>()) {
        let family = MutationFamily::new(MutationKind::Jump, n).unwrap();
        let mu = family.decode(raw % family.space_size()).unwrap();
        let (i, j) = mu.positions();
        let back = family.encode(j, i).unwrap();
        let x = perm(n, seed);
        prop_assert_eq!(apply_mutation(&apply_mutation(&x, &mu).unwrap(), &back).unwrap(), x);
    }

    #[test]
    fn drift_identity(n in 2usize..64, s1 in any::<u64>(), s2 in any::<u64>()) {
        let problem = HamProblem::new(perm(n, s1));
        let x = perm(n, s2);
        let d = problem.evaluate(&x).unwrap().distance() as u64;
        prop_assert_eq!(enumerate_exchange_effects(&problem, &x).unwrap().positive_mass(), d);
    }
}
