mod common;

use common::{arb_monoid, arb_word, vars, w};
use isoterm_core::*;
use proptest::prelude::*;

/// Lee product by string reduction: concatenate labels, collapse repeated
/// letters, and keep the result only if it is an allowed alternating word.
fn lee_product_oracle(l: usize, a: &str, b: &str) -> String {
    if a == "0" || b == "0" {
        return "0".into();
    }
    let joined: String = [a, b].iter().filter(|s| **s != "1").copied().collect();
    if joined.is_empty() {
        return "1".into();
    }
    let mut reduced = String::new();
    for c in joined.chars() {
        if !reduced.ends_with(c) {
            reduced.push(c);
        }
    }
    let ok = reduced.len() < l || (reduced.len() == l && reduced.starts_with('b'));
    if ok {
        reduced
    } else {
        "0".into()
    }
}

/// Every factor of `words`, as strings.
fn factors(words: &[&str]) -> Vec<String> {
    let mut out = Vec::new();
    for s in words {
        for i in 0..s.len() {
            for j in i + 1..=s.len() {
                out.push(s[i..j].to_string());
            }
        }
    }
    out
}

#[test]
fn lee_products_match_reduction() {
    for l in 2..=8 {
        let m = lee_monoid(l).unwrap();
        assert_eq!(m.size(), 2 * l + 1);
        for a in m.elements() {
            for b in m.elements() {
                assert_eq!(
                    m.label(m.mul(a, b)),
                    lee_product_oracle(l, m.label(a), m.label(b)),
                    "L{l}: {} * {}",
                    m.label(a),
                    m.label(b)
                );
            }
        }
    }
}

#[test]
fn dilworth_products_match_concatenation() {
    let words = ["abtba", "atbab", "abab", "aat"];
    let m = dilworth(&words.iter().map(|s| w(s)).collect::<Vec<_>>()).unwrap();
    let fs = factors(&words);
    assert_eq!(m.size(), 25);
    for a in m.elements() {
        for b in m.elements() {
            let (la, lb) = (m.label(a), m.label(b));
            let expected = match (la, lb) {
                ("0", _) | (_, "0") => "0".to_string(),
                ("1", x) | (x, "1") => x.to_string(),
                (x, y) => {
                    let c = format!("{x}{y}");
                    if fs.contains(&c) {
                        c
                    } else {
                        "0".into()
                    }
                }
            };
            assert_eq!(m.label(m.mul(a, b)), expected);
        }
    }
}

#[test]
fn l2_by_hand_equals_construction() {
    // 1, a, b, ba, 0
    let table = vec![
        vec![0, 1, 2, 3, 4],
        vec![1, 1, 4, 4, 4],
        vec![2, 3, 2, 3, 4],
        vec![3, 3, 4, 4, 4],
        vec![4, 4, 4, 4, 4],
    ];
    let labels = ["1", "a", "b", "ba", "0"].map(String::from).to_vec();
    let by_hand = monoid_from_table(labels, table, 0, Some(4)).unwrap();
    assert_eq!(by_hand, lee_monoid(2).unwrap());
}

proptest! {
    #[test]
    fn evaluate_is_a_homomorphism(m in arb_monoid(), u in arb_word(3, 6), v in arb_word(3, 6), vals in prop::collection::vec(0usize..64, 3)) {
        let theta: Assignment = vars("xyz")
            .into_iter()
            .zip(&vals)
            .map(|(x, &i)| (x, (i % m.size()) as Elem))
            .collect();
        let uv = u.concat(&v);
        let left = evaluate(&m, &uv, &theta).unwrap();
        let right = m.mul(evaluate(&m, &u, &theta).unwrap(), evaluate(&m, &v, &theta).unwrap());
        prop_assert_eq!(left, right);
    }

    #[test]
    fn pow_matches_repeated_product(m in arb_monoid(), a in 0usize..64, e in 0u64..40) {
        let a = (a % m.size()) as Elem;
        let naive = (0..e).fold(m.identity(), |acc, _| m.mul(acc, a));
        prop_assert_eq!(m.pow(a, e), naive);
    }

    #[test]
    fn index_period_is_exact(m in arb_monoid()) {
        let (n, p) = m.index_period();
        for a in m.elements() {
            prop_assert_eq!(m.pow(a, (n + p) as u64), m.pow(a, n as u64));
        }
        // no smaller index works
        if n > 1 {
            prop_assert!(m.elements().any(|a| m.pow(a, (n - 1 + p) as u64) != m.pow(a, (n - 1) as u64)));
        }
        prop_assert_eq!(m.is_aperiodic(), p == 1);
    }

    #[test]
    fn json_round_trip(m in arb_monoid()) {
        let back = FiniteMonoid::from_json(&m.to_json()).unwrap();
        prop_assert_eq!(back, m);
    }

    #[test]
    fn detected_zero_is_absorbing(m in arb_monoid()) {
        if let Some(z) = m.detect_zero() {
            prop_assert!(m.elements().all(|x| m.mul(z, x) == z && m.mul(x, z) == z));
        }
    }
}
