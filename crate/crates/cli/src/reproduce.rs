//! The reproduction ledger: every machine-checkable fact as a named check.

use std::time::Instant;

use anyhow::Result;
use clap::ValueEnum;
use isoterm_core::termcheck::TermStatus;
use isoterm_core::words::{
    blocks, height, identity_pair_unvn, perkins_words, project, same_type,
    verify_jackson_properties, word_stats,
};
use isoterm_core::{
    adjoin_zero, dilworth, evaluate, lee_monoid, parse_word, satisfies, satisfies_lee,
    satisfies_with, transformation_monoid, word_function_table, Config, FiniteMonoid, FreeAlgebra,
    SearchOptions, TermChecker, Var, Word,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Sizes,
    Free,
    Identities,
    Propc,
    Isoterms,
    Jackson,
    Oracles,
    Blocks,
    All,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LedgerEntry {
    pub fact_id: String,
    pub paper_ref: String,
    pub status: String,
    pub millis: u64,
}

impl LedgerEntry {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }

    pub fn skipped(&self) -> bool {
        self.status.starts_with("skipped")
    }
}

/// Settings shared by every check of a run.
#[derive(Clone, Debug)]
pub struct Context {
    pub config: Config,
    pub seed: u64,
    pub deterministic: bool,
}

type Check = Box<dyn Fn(&Context) -> Result<bool>>;

struct Fact {
    id: String,
    about: String,
    check: Check,
}

fn fact(
    id: impl Into<String>,
    about: impl Into<String>,
    check: impl Fn(&Context) -> Result<bool> + 'static,
) -> Fact {
    Fact {
        id: id.into(),
        about: about.into(),
        check: Box::new(check),
    }
}

fn w(s: &str) -> Word {
    parse_word(s).expect("built-in words parse")
}

fn lee(l: usize) -> FiniteMonoid {
    lee_monoid(l).expect("l >= 2")
}

fn sizes() -> Vec<Fact> {
    let mut facts = Vec::new();
    for l in 2..=10 {
        facts.push(fact(
            format!("sizes.lee.{l}"),
            format!("L_{l}^1 has 2l+1 = {} elements", 2 * l + 1),
            move |_| Ok(lee_monoid(l)?.size() == 2 * l + 1),
        ));
    }
    facts.push(fact(
        "sizes.perkins",
        "Dilworth monoid of the Perkins words has 25 elements",
        |_| Ok(dilworth(&perkins_words())?.size() == 25),
    ));
    facts.push(fact(
        "sizes.dilworth.ab",
        "S^1({ab}) = {1, a, b, ab, 0}",
        |_| Ok(dilworth(&[w("ab")])?.labels() == ["1", "a", "b", "ab", "0"]),
    ));
    facts.push(fact(
        "sizes.dilworth.abab",
        "S^1({abab}) has 9 elements",
        |_| Ok(dilworth(&[w("abab")])?.size() == 9),
    ));
    facts.push(fact(
        "sizes.lee.2.elements",
        "L_2^1 = {1, a, b, ba, 0} with ab = 0",
        |_| {
            let m = lee(2);
            let (a, b) = (m.element("a").unwrap(), m.element("b").unwrap());
            Ok(m.labels() == ["1", "a", "b", "ba", "0"]
                && Some(m.mul(a, b)) == m.zero()
                && m.label(m.mul(b, a)) == "ba")
        },
    ));
    facts
}

/// Frozen sizes of relatively free monoids.
pub const FREE_SIZES: [(usize, usize, usize); 3] = [(2, 1, 3), (5, 2, 50), (6, 2, 106)];

fn free() -> Vec<Fact> {
    FREE_SIZES
        .iter()
        .map(|&(l, n, size)| {
            fact(
                format!("free.lee.{l}.n{n}"),
                format!("F(L_{l}^1, {n}) has {size} elements and is closed"),
                move |ctx| {
                    let f = FreeAlgebra::build(&lee(l), n, &ctx.config)?;
                    Ok(f.len() == size && f.verify_closure(&lee(l)))
                },
            )
        })
        .collect()
}

fn identities() -> Vec<Fact> {
    let mut facts = vec![
        fact(
            "identities.lee.2.xy_yx",
            "L_2^1 violates xy = yx at x=a, y=b",
            |ctx| {
                let m = lee(2);
                let r = satisfies_with(&m, &w("xy"), &w("yx"), &SearchOptions::from(&ctx.config))?;
                let wit = r.witness.unwrap_or_default();
                Ok(!r.holds
                    && wit.get(Var::new("x")).map(|e| m.label(e)) == Some("a")
                    && wit.get(Var::new("y")).map(|e| m.label(e)) == Some("b"))
            },
        ),
        fact(
            "identities.lee.2.xyxy_yxyx",
            "L_2^1 satisfies xyxy = yxyx",
            |ctx| {
                let r = satisfies_with(
                    &lee(2),
                    &w("xyxy"),
                    &w("yxyx"),
                    &SearchOptions::from(&ctx.config),
                )?;
                Ok(r.holds)
            },
        ),
        fact(
            "identities.lee.6.xyyxyx",
            "L_6^1 satisfies xyyxyx = xyxyyx",
            |ctx| {
                let r = satisfies_with(
                    &lee(6),
                    &w("xyyxyx"),
                    &w("xyxyyx"),
                    &SearchOptions::from(&ctx.config),
                )?;
                Ok(r.holds)
            },
        ),
    ];
    for (l, k) in [(4, 1), (5, 1), (6, 2), (7, 2)] {
        facts.push(fact(
            format!("identities.unvn.lee.{l}.k{k}"),
            format!("L_{l}^1 satisfies U_4 = V_4 with k = {k} (values 1, a, b suffice)"),
            move |ctx| {
                let (u, v) = identity_pair_unvn(4, k)?;
                let r = satisfies_lee(l, &u, &v, &SearchOptions::from(&ctx.config))?;
                Ok(r.holds && r.restricted.len() == 16)
            },
        ));
    }
    facts.push(fact(
        "identities.unvn.type",
        "U_4 and V_4 differ in type: only U_4 contains x16 x1",
        |_| {
            let (u, v) = identity_pair_unvn(4, 1)?;
            let factor = [Var::indexed("x", 16), Var::indexed("x", 1)];
            Ok(!same_type(&u, &v) && u.contains_factor(&factor) && !v.contains_factor(&factor))
        },
    ));
    facts
}

fn propc() -> Vec<Fact> {
    let mut facts: Vec<Fact> = (2..=5)
        .map(|l| {
            fact(
                format!("propc.lee.{l}"),
                format!("L_{l}^1 has Property (C_{l})"),
                move |ctx| {
                    Ok(TermChecker::new(&lee(l), ctx.config.clone())
                        .property_c(l)?
                        .holds)
                },
            )
        })
        .collect();
    facts.push(fact(
        "propc.lee.2.height3",
        "L_2^1 lacks Property (C_3): xyyx = xyxy",
        |ctx| {
            let m = lee(2);
            let p = TermChecker::new(&m, ctx.config.clone()).property_c(3)?;
            let Some((u, v)) = p.witness else {
                return Ok(false);
            };
            Ok(!p.holds && u == w("xyyx") && v == w("xyxy") && satisfies(&m, &u, &v)?.holds)
        },
    ));
    facts.push(fact(
        "propc.lee.6.contains.lee.5",
        "var L_6^1 contains L_5^1",
        |ctx| {
            Ok(TermChecker::new(&lee(6), ctx.config.clone())
                .property_c(5)?
                .holds)
        },
    ));
    facts
}

fn isoterms() -> Vec<Fact> {
    let mut facts = vec![
        fact(
            "isoterms.lee.6.xyyxyx",
            "xyyxyx is not an isoterm for L_6^1; least witness xyxyyx",
            |ctx| {
                let v = TermChecker::new(&lee(6), ctx.config.clone()).is_isoterm(&w("xyyxyx"))?;
                Ok(v.status == TermStatus::NotTerm && v.witness == Some(w("xyxyyx")))
            },
        ),
        fact(
            "isoterms.lee.6.xyyxyx.tau",
            "xyyxyx is a same-type term for L_6^1",
            |ctx| {
                Ok(TermChecker::new(&lee(6), ctx.config.clone())
                    .is_tau_term_sametype(&w("xyyxyx"))?
                    .is_term())
            },
        ),
        fact(
            "isoterms.lee.2.xyxy.tau",
            "xyxy is not a same-type term for L_2^1",
            |ctx| {
                let v = TermChecker::new(&lee(2), ctx.config.clone())
                    .is_tau_term_sametype(&w("xyxy"))?;
                Ok(v.status == TermStatus::NotTerm && v.witness == Some(w("xyyx")))
            },
        ),
    ];
    for l in [2, 3] {
        facts.push(fact(
            format!("isoterms.lee.{l}.ab"),
            format!("ab is an isoterm for L_{l}^1"),
            move |ctx| {
                Ok(TermChecker::new(&lee(l), ctx.config.clone())
                    .is_isoterm(&w("ab"))?
                    .is_term())
            },
        ));
    }
    for l in [4, 5] {
        facts.push(fact(
            format!("isoterms.lee.{l}.generators"),
            format!("abab, a^2b^2 and ab^2a are isoterms for L_{l}^1"),
            move |ctx| {
                let m = lee(l);
                let checker = TermChecker::new(&m, ctx.config.clone());
                for u in ["abab", "a^2b^2", "ab^2a"] {
                    if !checker.is_isoterm(&w(u))?.is_term() {
                        return Ok(false);
                    }
                }
                Ok(true)
            },
        ));
    }
    facts.push(fact(
        "isoterms.scan.lee.3",
        "isoterms of L_3^1 up to length 4 are 1-limited",
        |ctx| {
            let scan = TermChecker::new(&lee(3), ctx.config.clone()).isoterm_scan(4, 2)?;
            Ok(scan.isoterms().count() > 0 && scan.isoterms().all(|r| r.klimited(1)))
        },
    ));
    facts.push(fact(
        "isoterms.scan.lee.5",
        "isoterms of L_5^1 up to length 4 are 2-limited",
        |ctx| {
            let scan = TermChecker::new(&lee(5), ctx.config.clone()).isoterm_scan(4, 2)?;
            let generators = ["abab", "a^2b^2", "ab^2a"].map(w);
            Ok(scan.isoterms().all(|r| r.klimited(2))
                && generators
                    .iter()
                    .all(|g| scan.isoterms().any(|r| &r.word == g)))
        },
    ));
    facts.push(fact(
        "isoterms.perkins",
        "every Perkins word is an isoterm for its Dilworth monoid",
        |ctx| {
            let m = dilworth(&perkins_words())?;
            let checker = TermChecker::new(&m, ctx.config.clone());
            for u in perkins_words() {
                if !checker.is_isoterm(&u)?.is_term() {
                    return Ok(false);
                }
            }
            Ok(true)
        },
    ));
    facts.push(fact(
        "isoterms.klimited",
        "xyyxyx is 3-limited and not 2-limited",
        |_| {
            let u = w("xyyxyx");
            Ok(isoterm_core::klimited(&u, 3) && !isoterm_core::klimited(&u, 2))
        },
    ));
    facts
}

fn jackson() -> Vec<Fact> {
    let mut facts = Vec::new();
    for n in 4..=8 {
        for k in 1..=3u32 {
            facts.push(fact(
                format!("jackson.n{n}.k{k}"),
                format!("U_{n} with k = {k}: each variable k+2 times, P1 and P2 hold"),
                move |_| {
                    let (u, v) = identity_pair_unvn(n, k)?;
                    let counts = [&u, &v]
                        .iter()
                        .all(|side| word_stats(side).occ.values().all(|&c| c == k as usize + 2));
                    let r = verify_jackson_properties(n, k)?;
                    Ok(counts && r.p1 && r.p2 && !same_type(&u, &v))
                },
            ));
        }
    }
    facts
}

/// One randomized identity-checking instance.
#[derive(Clone, Debug)]
pub struct Instance {
    pub monoid: FiniteMonoid,
    pub u: Word,
    pub v: Word,
}

fn random_monoid(rng: &mut ChaCha8Rng) -> FiniteMonoid {
    let pool = || -> Vec<FiniteMonoid> {
        vec![
            FiniteMonoid::trivial(),
            lee(2),
            lee(3),
            dilworth(&[w("ab")]).unwrap(),
            dilworth(&[w("aab")]).unwrap(),
            dilworth(&[w("xy"), w("yx")]).unwrap(),
        ]
    };
    if rng.gen_bool(0.25) {
        return pool().choose(rng).unwrap().clone();
    }
    loop {
        let degree = rng.gen_range(2..=3);
        let gens: Vec<Vec<usize>> = (0..rng.gen_range(1..=2))
            .map(|_| (0..degree).map(|_| rng.gen_range(0..degree)).collect())
            .collect();
        let Ok(m) = transformation_monoid(degree, &gens, 7) else {
            continue;
        };
        if m.size() < 7 && m.zero().is_none() && rng.gen_bool(0.5) {
            return adjoin_zero(&m).expect("valid table");
        }
        return m;
    }
}

fn random_word(rng: &mut ChaCha8Rng, vars: &[Var]) -> Word {
    let len = rng.gen_range(1..=8);
    Word::from_letters((0..len).map(|_| *vars.choose(rng).unwrap())).expect("nonempty")
}

/// Seeded instances: monoids of at most seven elements and identities in
/// at most three variables with sides of at most eight letters. A quarter
/// of the right-hand sides are the left side with one run stretched by
/// the period, which often holds.
pub fn random_instances(seed: u64, count: usize) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all = [Var::new("x"), Var::new("y"), Var::new("z")];
    (0..count)
        .map(|_| {
            let monoid = random_monoid(&mut rng);
            let vars = &all[..rng.gen_range(1..=3)];
            let u = random_word(&mut rng, vars);
            let v = if rng.gen_bool(0.25) && u.len() < 8 {
                let (_, p) = monoid.index_period();
                let i = rng.gen_range(0..u.runs().len());
                let runs = u.runs().iter().enumerate().map(|(j, r)| {
                    let stretch = if i == j { p as u32 } else { 0 };
                    (r.var, (r.exp + stretch).min(8))
                });
                Word::from_runs(runs).expect("nonempty")
            } else {
                random_word(&mut rng, vars)
            };
            Instance { monoid, u, v }
        })
        .collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OracleReport {
    pub instances: usize,
    pub holding: usize,
    pub disagreements: Vec<String>,
}

/// Pruned search, unpruned search and word-function comparison on every
/// instance, with witnesses rechecked by direct evaluation.
pub fn oracle_equivalence(instances: &[Instance], config: &Config) -> Result<OracleReport> {
    let mut report = OracleReport::default();
    let pruned = SearchOptions::from(config);
    let unpruned = SearchOptions {
        prune: false,
        ..SearchOptions::from(config)
    };
    for inst in instances {
        let (m, u, v) = (&inst.monoid, &inst.u, &inst.v);
        let a = satisfies_with(m, u, v, &pruned)?;
        let b = satisfies_with(m, u, v, &unpruned)?;
        let mut vars = u.content();
        vars.extend(v.content().into_iter().filter(|x| !u.content().contains(x)));
        let by_function = word_function_table(m, u, &vars)? == word_function_table(m, v, &vars)?;
        let witness_ok = match &a.witness {
            Some(theta) => evaluate(m, u, theta)? != evaluate(m, v, theta)?,
            None => true,
        };
        report.instances += 1;
        report.holding += a.holds as usize;
        if a.holds != b.holds || a.holds != by_function || a.witness != b.witness || !witness_ok {
            report
                .disagreements
                .push(format!("{u} = {v} on {} elements", m.size()));
        }
    }
    Ok(report)
}

/// Words over `x, y, t` of three to five letters with at least one linear
/// and one non-linear variable.
pub fn block_corpus() -> Vec<Word> {
    let alphabet = [Var::new("x"), Var::new("y"), Var::new("t")];
    let mut corpus = Vec::new();
    for len in 3..=5u32 {
        for idx in 0..3usize.pow(len) {
            let mut rest = idx;
            let letters: Vec<Var> = (0..len)
                .map(|_| {
                    let x = alphabet[rest % 3];
                    rest /= 3;
                    x
                })
                .collect();
            let u = Word::from_letters(letters).expect("nonempty");
            let stats = word_stats(&u);
            if !stats.linear.is_empty() && !stats.nonlinear.is_empty() {
                corpus.push(u);
            }
        }
    }
    corpus
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BlockReport {
    pub words: usize,
    pub equivalents: usize,
    /// Pairs where the begin/end comparison applied.
    pub begend_checked: usize,
    /// Pairs where the two-letter same-type conclusion applied.
    pub two_letter_checked: usize,
    pub violations: Vec<String>,
}

/// For `M` with Property (C_l), every equivalent word up to two letters
/// longer must keep the linear variables in order and the block contents;
/// with exactly two non-linear variables of joint height at most `l`, the
/// blocks must also begin and end alike, and if every block has height at
/// most 3 the words must be of the same type.
pub fn block_preservation(
    m: &FiniteMonoid,
    l: usize,
    corpus: &[Word],
    config: &Config,
) -> Result<BlockReport> {
    let checker = TermChecker::new(m, config.clone());
    let mut report = BlockReport::default();
    for u in corpus {
        let bu = blocks(u);
        let nonlinear = word_stats(u).nonlinear;
        let two_letter = l > 2 && nonlinear.len() == 2 && height(&project(u, &nonlinear)?) <= l;
        let low_blocks = bu.blocks.iter().flatten().all(|b| height(b) <= 3);
        report.words += 1;
        for v in checker.enumerate_equivalent(u, u.len() + 2)? {
            report.equivalents += 1;
            let bv = blocks(&v);
            let mut ok = bv.linear == bu.linear
                && word_stats(&v)
                    .nonlinear
                    .iter()
                    .collect::<std::collections::BTreeSet<_>>()
                    == nonlinear.iter().collect()
                && (0..bu.blocks.len()).all(|i| bu.block_content(i) == bv.block_content(i));
            if ok && two_letter {
                report.begend_checked += 1;
                let ends = |b: &Option<Word>| b.as_ref().map(|b| (b.first(), b.last()));
                ok = bu
                    .blocks
                    .iter()
                    .zip(&bv.blocks)
                    .all(|(a, b)| ends(a) == ends(b));
                if ok && low_blocks {
                    report.two_letter_checked += 1;
                    ok = same_type(u, &v);
                }
            }
            if !ok {
                report.violations.push(format!("{u} = {v}"));
            }
        }
    }
    Ok(report)
}

/// Randomized instances checked by the oracle suite.
pub const ORACLE_INSTANCES: usize = 1000;

fn oracles() -> Vec<Fact> {
    vec![fact(
        "oracles.random",
        format!("pruned search, unpruned search and word functions agree on {ORACLE_INSTANCES} random identities"),
        |ctx| {
            let report = oracle_equivalence(&random_instances(ctx.seed, ORACLE_INSTANCES), &ctx.config)?;
            Ok(report.instances == ORACLE_INSTANCES && report.disagreements.is_empty())
        },
    )]
}

fn block_facts() -> Vec<Fact> {
    (3..=5)
        .map(|l| {
            fact(
                format!("blocks.lee.{l}"),
                format!("equivalents in L_{l}^1 keep linear order, block content and block ends"),
                move |ctx| {
                    let corpus = block_corpus();
                    let r = block_preservation(&lee(l), l, &corpus, &ctx.config)?;
                    Ok(r.words >= 50 && r.violations.is_empty())
                },
            )
        })
        .collect()
}

fn facts(suite: Suite) -> Vec<Fact> {
    match suite {
        Suite::Sizes => sizes(),
        Suite::Free => free(),
        Suite::Identities => identities(),
        Suite::Propc => propc(),
        Suite::Isoterms => isoterms(),
        Suite::Jackson => jackson(),
        Suite::Oracles => oracles(),
        Suite::Blocks => block_facts(),
        Suite::All => [
            Suite::Sizes,
            Suite::Free,
            Suite::Identities,
            Suite::Propc,
            Suite::Isoterms,
            Suite::Jackson,
            Suite::Oracles,
            Suite::Blocks,
        ]
        .into_iter()
        .flat_map(facts)
        .collect(),
    }
}

/// Runs a suite. Exhausted budgets mark a fact `skipped: resources`; any
/// other error marks it `error: ...`.
pub fn run_suite(suite: Suite, ctx: &Context) -> Vec<LedgerEntry> {
    facts(suite)
        .into_iter()
        .map(|f| {
            let start = Instant::now();
            let status = match (f.check)(ctx) {
                Ok(true) => "pass".to_string(),
                Ok(false) => "fail".to_string(),
                Err(e)
                    if e.downcast_ref::<isoterm_core::Error>()
                        .is_some_and(|e| e.is_resource()) =>
                {
                    "skipped: resources".to_string()
                }
                Err(e) => format!("error: {e}"),
            };
            let millis = if ctx.deterministic {
                0
            } else {
                start.elapsed().as_millis() as u64
            };
            LedgerEntry {
                fact_id: f.id,
                paper_ref: f.about,
                status,
                millis,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fact_ids_are_unique() {
        let all = facts(Suite::All);
        let mut ids: Vec<_> = all.iter().map(|f| f.id.clone()).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), all.len());
    }

    #[test]
    fn instances_are_seeded() {
        let a = random_instances(7, 20);
        let b = random_instances(7, 20);
        assert!(a
            .iter()
            .zip(&b)
            .all(|(x, y)| x.monoid.to_json() == y.monoid.to_json() && x.u == y.u && x.v == y.v));
        assert!(a
            .iter()
            .all(|i| i.monoid.size() <= 7 && i.u.len() <= 8 && i.v.len() <= 8));
    }

    #[test]
    fn corpus_shape() {
        let corpus = block_corpus();
        assert!(corpus.len() >= 50);
        assert!(corpus
            .iter()
            .all(|u| u.content().len() <= 3 && !word_stats(u).linear.is_empty()));
    }

    #[test]
    fn small_suite_runs() {
        let ctx = Context {
            config: Config::default(),
            seed: 1,
            deterministic: true,
        };
        let ledger = run_suite(Suite::Sizes, &ctx);
        assert!(
            ledger.iter().all(|e| e.passed() && e.millis == 0),
            "{ledger:?}"
        );
    }
}
