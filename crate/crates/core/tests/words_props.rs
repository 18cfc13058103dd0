mod common;

use common::{arb_run_word, arb_word, vars, w};
use isoterm_core::words::*;
use proptest::prelude::*;

proptest! {
    #[test]
    fn print_then_parse_is_identity(u in arb_run_word(4, 8, 5)) {
        let printed = u.to_string();
        let again = parse_word(&printed).unwrap();
        prop_assert_eq!(&again, &u);
        prop_assert_eq!(again.to_string(), printed);
        prop_assert_eq!(parse_word(&u.compact()).unwrap(), u);
    }

    #[test]
    fn shape_is_idempotent(u in arb_run_word(3, 8, 4)) {
        let s = shape_of(&u);
        prop_assert_eq!(shape_of(&s.to_word().unwrap()), s);
    }

    #[test]
    fn same_type_is_an_equivalence(u in arb_run_word(3, 6, 3), e1 in prop::collection::vec(1u32..5, 6), e2 in prop::collection::vec(1u32..5, 6)) {
        let rerun = |e: &[u32]| Word::from_runs(u.runs().iter().zip(e).map(|(r, &k)| (r.var, k))).unwrap();
        let (v, x) = (rerun(&e1), rerun(&e2));
        prop_assert!(same_type(&u, &u));
        prop_assert!(same_type(&u, &v) && same_type(&v, &u));
        prop_assert!(same_type(&v, &x) && same_type(&u, &x));
    }

    #[test]
    fn same_type_matches_shape_equality(u in arb_word(2, 6), v in arb_word(2, 6)) {
        prop_assert_eq!(same_type(&u, &v), shape_of(&u) == shape_of(&v));
    }

    #[test]
    fn reverse_is_an_involution(u in arb_run_word(4, 8, 3)) {
        prop_assert_eq!(reverse(&reverse(&u)), u.clone());
        prop_assert_eq!(reverse(&u).len(), u.len());
    }

    #[test]
    fn project_onto_content_is_identity(u in arb_word(4, 10)) {
        prop_assert_eq!(project(&u, &u.content()).unwrap(), u);
    }

    #[test]
    fn identity_substitution_is_identity(u in arb_word(4, 10)) {
        prop_assert_eq!(substitute(&u, &Substitution::identity(&u.content())).unwrap(), u);
    }

    #[test]
    fn substitution_preserves_length_sum(u in arb_word(3, 8), images in prop::collection::vec(arb_word(2, 3), 3)) {
        let xs = vars("xyz");
        let theta = xs.iter().zip(&images).fold(Substitution::new(), |t, (&x, i)| t.with(x, i.clone()));
        let image = substitute(&u, &theta).unwrap();
        let expected: usize = u.letters().map(|x| theta.get(x).unwrap().len()).sum();
        prop_assert_eq!(image.len(), expected);
    }

    #[test]
    fn equalize_leaves_no_mergeable_pair(u in arb_word(3, 8), images in prop::collection::vec(arb_run_word(2, 2, 3), 3)) {
        let xs = vars("xyz");
        let theta = xs.iter().zip(&images).fold(Substitution::new(), |t, (&x, i)| t.with(x, i.clone()));
        let eq = equalize(&u, &theta).unwrap();
        // (ii): no two distinct variables map to powers of one variable
        let bases: Vec<_> = eq
            .word
            .content()
            .iter()
            .filter_map(|&x| {
                let img = theta.get(x).unwrap();
                (img.runs().len() == 1).then(|| img.first())
            })
            .collect();
        let mut dedup = bases.clone();
        dedup.sort();
        dedup.dedup();
        prop_assert_eq!(dedup.len(), bases.len());
        // (i): the image keeps its type
        let before = substitute(&u, &theta).unwrap();
        let after = substitute(&eq.word, &theta).unwrap();
        prop_assert!(same_type(&before, &after));
    }

    #[test]
    fn blocks_reassemble(u in arb_word(4, 10)) {
        let b = blocks(&u);
        prop_assert_eq!(b.blocks.len(), b.linear.len() + 1);
        prop_assert_eq!(b.concat(), u.clone());
        prop_assert_eq!(b.linear, word_stats(&u).linear);
    }

    #[test]
    fn stats_partition_content(u in arb_word(4, 10)) {
        let s = word_stats(&u);
        prop_assert_eq!(s.linear.len() + s.nonlinear.len(), s.content.len());
        prop_assert_eq!(s.occ.values().sum::<usize>(), u.len());
    }

    #[test]
    fn height_counts_islands_on_two_letters(u in arb_word(2, 12)) {
        let letters = u.to_letters();
        let islands = 1 + letters.windows(2).filter(|p| p[0] != p[1]).count();
        let ih = islands_and_height(&u);
        prop_assert_eq!(height(&u), islands);
        prop_assert_eq!(ih.height, islands);
        prop_assert_eq!(ih.islands.values().sum::<usize>(), islands);
    }
}

#[test]
fn jackson_family_invariants() {
    for n in 4..=8 {
        for k in 1..=3 {
            let (un, vn) = identity_pair_unvn(n, k).unwrap();
            for side in [&un, &vn] {
                let stats = word_stats(side);
                assert_eq!(stats.content.len(), n * n);
                assert!(
                    stats.occ.values().all(|&c| c == k as usize + 2),
                    "n={n} k={k}"
                );
            }
            let report = verify_jackson_properties(n, k).unwrap();
            assert!(report.p1 && report.p2, "n={n} k={k}");
            assert!(!same_type(&un, &vn));
            let first = Var::indexed("x", 1);
            let last = Var::indexed("x", n * n);
            assert!(un.contains_factor(&[last, first]));
            assert!(!vn.contains_factor(&[last, first]));
        }
    }
}

#[test]
fn spec_words() {
    let u = w("xyyx^5yx^3");
    assert_eq!(u.runs().len(), 5);
    let ih = islands_and_height(&u);
    assert_eq!(ih.islands[&Var::new("x")], 3);
    assert_eq!(ih.islands[&Var::new("y")], 2);
    assert!(same_type(&w("x^2yxzx^5y^2xzx^3"), &w("xy^2x^3zxyx^2zx")));
}
