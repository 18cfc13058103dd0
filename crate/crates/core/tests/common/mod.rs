#![allow(dead_code)]

use isoterm_core::*;
use proptest::prelude::*;

pub fn w(s: &str) -> Word {
    parse_word(s).unwrap()
}

pub fn vars(names: &str) -> Vec<Var> {
    names.chars().map(|c| Var::new(&c.to_string())).collect()
}

/// Words over the first `k` of `x, y, z, t` with `1..=max_len` letters.
pub fn arb_word(k: usize, max_len: usize) -> impl Strategy<Value = Word> {
    let alphabet = vars("xyzt");
    prop::collection::vec(0..k, 1..=max_len)
        .prop_map(move |idx| Word::from_letters(idx.into_iter().map(|i| alphabet[i])).unwrap())
}

/// Words with explicit exponents, so long runs show up.
pub fn arb_run_word(k: usize, max_runs: usize, max_exp: u32) -> impl Strategy<Value = Word> {
    let alphabet = vars("xyzt");
    prop::collection::vec((0..k, 1..=max_exp), 1..=max_runs).prop_map(move |runs| {
        Word::from_runs(runs.into_iter().map(|(i, e)| (alphabet[i], e))).unwrap()
    })
}

/// Fixed small monoids, with and without zero, aperiodic and not.
pub fn monoid_pool() -> Vec<FiniteMonoid> {
    vec![
        FiniteMonoid::trivial(),
        lee_monoid(2).unwrap(),
        lee_monoid(3).unwrap(),
        dilworth(&[w("ab")]).unwrap(),
        dilworth(&[w("aab")]).unwrap(),
        dilworth(&[w("xy"), w("yx")]).unwrap(),
        transformation_monoid(3, &[vec![1, 2, 0]], 8).unwrap(),
        transformation_monoid(2, &[vec![0, 0], vec![1, 0]], 8).unwrap(),
        transformation_monoid(3, &[vec![1, 2, 2]], 8).unwrap(),
        transformation_monoid(3, &[vec![0, 0, 1], vec![2, 2, 2]], 8).unwrap(),
    ]
}

/// Monoids from the pool or generated by one or two random maps of three
/// points, at most seven elements.
pub fn arb_monoid() -> impl Strategy<Value = FiniteMonoid> {
    let pool = monoid_pool();
    let n = pool.len();
    prop_oneof![
        (0..n).prop_map(move |i| pool[i].clone()),
        prop::collection::vec(prop::collection::vec(0..3usize, 3), 1..=2).prop_filter_map(
            "more than seven elements",
            |gens| transformation_monoid(3, &gens, 7).ok()
        ),
    ]
}
