//! Property tests for the algebraic invariants that hold on the whole
//! input space rather than on worked examples.

use num::{BigInt, Zero};
use plucker_core::model_checker::model_generators;
use plucker_core::pluecker::{evaluate_tableau, random_matrix, straighten};
use plucker_core::rep_theory::FiniteRootSystem;
use plucker_core::{rat_int, Column, ExtElement, Family, Gcm, Tableau, Weight};
use proptest::collection::vec;
use proptest::prelude::*;
use proptest::sample::subsequence;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn family_strategy() -> impl Strategy<Value = (Family, usize)> {
    prop_oneof![
        (Just(Family::A), 2..=6usize),
        (Just(Family::B), 2..=6usize),
        (Just(Family::C), 2..=6usize),
        (Just(Family::D), 3..=6usize),
    ]
}

proptest! {
    #[test]
    fn reflections_are_involutions(
        (family, rank) in family_strategy(),
        seed_coords in vec(-5..=5i64, 6),
        node in 0..6usize,
    ) {
        let gcm = Gcm::finite(family, rank).unwrap();
        let node = node % rank;
        let w = Weight(seed_coords[..rank].to_vec());
        let once = gcm.reflect(node, &w).unwrap();
        let twice = gcm.reflect(node, &once).unwrap();
        prop_assert_eq!(twice, w);
    }

    #[test]
    fn word_reduction_preserves_the_action(
        (family, rank) in family_strategy(),
        letters in vec(0..6usize, 0..8),
        seed_coords in vec(-5..=5i64, 6),
    ) {
        let gcm = Gcm::finite(family, rank).unwrap();
        let word = plucker_core::WeylWord(
            letters.iter().map(|&i| i % rank).collect(),
        );
        let reduced = gcm.reduce(&word).unwrap();
        prop_assert!(reduced.len() <= word.len());
        let w = Weight(seed_coords[..rank].to_vec());
        prop_assert_eq!(
            gcm.act(&word, &w).unwrap(),
            gcm.act(&reduced, &w).unwrap()
        );
    }

    #[test]
    fn dominance_is_antisymmetric(
        (family, rank) in family_strategy(),
        a in vec(0..=3i64, 6),
        b in vec(0..=3i64, 6),
    ) {
        let gcm = Gcm::finite(family, rank).unwrap();
        let lambda = Weight(a[..rank].to_vec());
        let mu = Weight(b[..rank].to_vec());
        let down = gcm.dominance_leq(&lambda, &mu).unwrap();
        let up = gcm.dominance_leq(&mu, &lambda).unwrap();
        prop_assert!(gcm.dominance_leq(&lambda, &lambda).unwrap());
        if down && up {
            prop_assert_eq!(lambda, mu);
        }
    }

    #[test]
    fn grado_is_additive_on_the_weight_monoid(
        family in prop_oneof![Just(Family::A), Just(Family::B), Just(Family::C)],
        rank in 2..=6usize,
        a in vec(0..=3i64, 6),
        b in vec(0..=3i64, 6),
    ) {
        let data = model_generators(family, rank).unwrap();
        let a = &a[..rank];
        let b = &b[..rank];
        let sum: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        let expected: i64 = sum
            .iter()
            .enumerate()
            .map(|(h, c)| (h as i64 + 1) * c)
            .sum();
        let grado = |coeffs: &[i64]| data.grado(&data.combine(coeffs)).unwrap();
        prop_assert_eq!(grado(&sum), expected);
        prop_assert_eq!(grado(a) + grado(b), expected);
    }
}

fn ext_strategy(n: usize, degree: usize) -> impl Strategy<Value = ExtElement> {
    let tuples = subsequence((0..n as u8).collect::<Vec<_>>(), degree);
    vec((tuples, -4..=4i64), 1..4).prop_map(move |terms| {
        let terms = terms.into_iter().map(|(t, c)| (t, rat_int(c))).collect();
        ExtElement::from_terms(n, terms).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn wedge_is_associative_and_graded_commutative(
        a in ext_strategy(6, 1),
        b in ext_strategy(6, 2),
        c in ext_strategy(6, 2),
    ) {
        let left = a.wedge(&b).unwrap().wedge(&c).unwrap();
        let right = a.wedge(&b.wedge(&c).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);

        // Degrees 1 and 2 commute; two odd degrees anticommute.
        prop_assert_eq!(a.wedge(&b).unwrap(), b.wedge(&a).unwrap());
        let ab = a.wedge(&a.wedge(&b).unwrap()).unwrap();
        let ba = a.wedge(&b).unwrap().wedge(&a).unwrap();
        prop_assert_eq!(ab, ba.scale(&rat_int(-1)));
    }
}

fn tableau_strategy(k: usize, n: u8) -> impl Strategy<Value = Tableau> {
    let column =
        subsequence((1..=n).collect::<Vec<_>>(), k).prop_map(move |ix| Column::new(ix, n).unwrap());
    vec(column, 1..=3).prop_map(move |cols| Tableau::new(cols, k, n).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn straightening_is_standard_and_evaluation_equal(
        t in prop_oneof![tableau_strategy(2, 5), tableau_strategy(3, 6)],
    ) {
        let result = straighten(&t).unwrap();
        for s in result.combo.keys() {
            prop_assert!(s.is_standard());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..3 {
            let m = random_matrix(&mut rng, t.n() as usize, t.k());
            prop_assert_eq!(
                evaluate_tableau(&t, &m).unwrap(),
                result.evaluate(&m).unwrap()
            );
        }
    }

    #[test]
    fn tensor_decomposition_is_symmetric_and_preserves_dimension(
        family in prop_oneof![Just(Family::A), Just(Family::B)],
        a in vec(0..=2i64, 2),
        b in vec(0..=2i64, 2),
    ) {
        let system = FiniteRootSystem::new(Gcm::finite(family, 2).unwrap()).unwrap();
        let lambda = Weight(a);
        let mu = Weight(b);
        let forward = system.tensor_decompose(&lambda, &mu).unwrap();
        let backward = system.tensor_decompose(&mu, &lambda).unwrap();
        prop_assert_eq!(&forward, &backward);

        let mut total = BigInt::zero();
        for (nu, mult) in &forward {
            prop_assert!(nu.is_dominant());
            prop_assert!(*mult > BigInt::zero());
            total += mult * system.weyl_dim(nu).unwrap();
        }
        let expected = system.weyl_dim(&lambda).unwrap() * system.weyl_dim(&mu).unwrap();
        prop_assert_eq!(total, expected);
    }
}

proptest! {
    #[test]
    fn dominant_weights_have_positive_dimensions(
        (family, rank) in family_strategy(),
        coords in vec(0..=2i64, 6),
    ) {
        let system = FiniteRootSystem::new(Gcm::finite(family, rank).unwrap()).unwrap();
        let lambda = Weight(coords[..rank].to_vec());
        let dim = system.weyl_dim(&lambda).unwrap();
        prop_assert!(dim >= BigInt::from(1));
    }
}
