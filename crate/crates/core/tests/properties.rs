use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use modlift::alpha::{named_cover, CosetTable, RsWord};
use modlift::autact::{precompose, standard_autgens};
use modlift::finquot::{enumerate_epis, FiniteHom, FiniteTarget, TargetKind};
use modlift::perm::{PermGroup, Permutation};
use modlift::surface::{SurfacePresentation, SurfaceWord};

fn genus2() -> &'static SurfacePresentation {
    static P: OnceLock<SurfacePresentation> = OnceLock::new();
    P.get_or_init(|| SurfacePresentation::new(2).unwrap())
}

fn homology_table() -> &'static CosetTable {
    static T: OnceLock<CosetTable> = OnceLock::new();
    T.get_or_init(|| named_cover("homology2", 2).unwrap())
}

fn s3_epis() -> &'static [FiniteHom] {
    static E: OnceLock<Vec<FiniteHom>> = OnceLock::new();
    E.get_or_init(|| {
        let t = Arc::new(FiniteTarget::new(TargetKind::Symmetric3).unwrap());
        enumerate_epis(2, &t, 1_000_000).unwrap()
    })
}

fn letter() -> impl Strategy<Value = i32> {
    (1..=4i32, any::<bool>()).prop_map(|(x, s)| if s { x } else { -x })
}

fn word(max: usize) -> impl Strategy<Value = SurfaceWord> {
    prop::collection::vec(letter(), 0..=max).prop_map(SurfaceWord::from_letters)
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn word_times_inverse_is_trivial(w in word(20)) {
        prop_assert!(genus2().is_trivial(&w.concat(&w.inverse())));
    }

    #[test]
    fn shortening_keeps_the_element(w in word(30)) {
        let p = genus2();
        let s = p.shorten(&w);
        prop_assert!(s.len() <= w.free_reduce().len());
        prop_assert!(p.words_equal(&s, &w));
    }

    #[test]
    fn conjugated_relator_is_trivial(u in word(8), v in word(8), inverse in any::<bool>()) {
        let p = genus2();
        let r = if inverse { p.relator().inverse() } else { p.relator().clone() };
        let w = v.concat(&u).concat(&r).concat(&u.inverse()).concat(&v.inverse());
        prop_assert!(p.is_trivial(&w));
    }

    #[test]
    fn words_print_and_parse(w in word(15)) {
        let back: SurfaceWord = w.to_string().parse().unwrap();
        prop_assert_eq!(back, w);
    }

    #[test]
    fn composition_is_associative(x in permutation(7), y in permutation(7), z in permutation(7)) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert!((&x * &x.inverse()).is_identity());
        prop_assert_eq!(Permutation::parse_cycles(7, &x.to_cycle_string()).unwrap(), x);
    }

    #[test]
    fn group_contains_products_of_generators(
        gens in prop::collection::vec(permutation(6), 1..=3),
        picks in prop::collection::vec(0usize..3, 0..10),
    ) {
        let g = PermGroup::with_degree(6, gens.clone()).unwrap();
        let x = picks.iter().fold(Permutation::identity(6), |acc, &i| &acc * &gens[i % gens.len()]);
        prop_assert!(g.contains(&x).unwrap());
        let orbit_product: usize = g.fundamental_orbits().iter().map(|o| o.len()).product();
        prop_assert_eq!(num_bigint::BigUint::from(orbit_product), g.order().clone());
    }

    #[test]
    fn coset_representatives_are_canonical(
        gens in prop::collection::vec(permutation(5), 1..=2),
        x in permutation(5),
        h_pick in 0usize..2,
    ) {
        let g = PermGroup::with_degree(5, gens.clone()).unwrap();
        let h = &gens[h_pick % gens.len()];
        prop_assert_eq!(g.canonical_left_coset_rep(&(&x * h)), g.canonical_left_coset_rep(&x));
        prop_assert_eq!(g.canonical_right_coset_rep(&(h * &x)), g.canonical_right_coset_rep(&x));
    }

    #[test]
    fn rewriting_round_trips(v in prop::collection::vec((1..=49i32, any::<bool>()), 0..=8)) {
        let t = homology_table();
        let v = RsWord(v.into_iter().map(|(i, s)| if s { i } else { -i }).collect());
        let expanded = t.expand(&v);
        let again = t.expand(&t.rewrite(&expanded).unwrap());
        prop_assert!(genus2().words_equal(&again, &expanded));
    }

    #[test]
    fn transversal_words_reach_their_cosets(c in 0u32..16) {
        let t = homology_table();
        prop_assert_eq!(t.trace(0, t.rep(c)), c);
    }

    #[test]
    fn precomposition_stays_in_the_epimorphisms(i in 0usize..360, j in 0usize..11) {
        let rho = &s3_epis()[i];
        let sigma = &standard_autgens(2)[j];
        let moved = precompose(rho, sigma).unwrap();
        prop_assert!(moved.is_surjective());
        prop_assert_eq!(&precompose(&moved, &sigma.inverse()).unwrap(), rho);
    }
}
