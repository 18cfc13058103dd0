//! Isoterms, same-type terms, Property (C_l) and the containment tests
//! built from them.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::automata::{
    distance_to, language_size, shape_letters, shortlex, LanguageSize, ProductTree, SmallDfa,
};
use crate::algebra::FiniteMonoid;
use crate::config::Config;
use crate::eqcheck::{satisfies_with, FreeAlgebra, SearchOptions};
use crate::error::{Error, Result};
use crate::words::{shape_of, word_stats, Shape, Var, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TermMode {
    /// Equality: `M |= u = v` forces `v = u`.
    Isoterm,
    /// Same type: `M |= u = v` forces `v` to differ from `u` only in exponents.
    Sametype,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TermStatus {
    IsTerm,
    NotTerm,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermVerdict {
    pub mode: TermMode,
    pub status: TermStatus,
    /// Least word (by length, then letter order) equal to the query in the
    /// monoid but violating the mode's relation.
    pub witness: Option<Word>,
    /// Sizes of the free algebras over the content and over the content
    /// plus one fresh variable.
    pub automaton_sizes: Vec<usize>,
}

impl TermVerdict {
    pub fn is_term(&self) -> bool {
        self.status == TermStatus::IsTerm
    }

    pub fn to_json(&self, query: &Word) -> Value {
        json!({
            "query": query.to_string(),
            "mode": self.mode,
            "status": self.status,
            "witness": self.witness.as_ref().map(|w| w.to_string()),
            "automaton_sizes": self.automaton_sizes,
            "budget_used": { "elements": self.automaton_sizes.iter().sum::<usize>() },
        })
    }
}

/// The Cayley-graph automaton of `F_M(n)` accepting the words equal to a
/// fixed word in `M`.
#[derive(Clone)]
pub struct EquivAutomaton {
    algebra: Arc<FreeAlgebra>,
    alphabet: Vec<Var>,
    accept: u32,
}

impl EquivAutomaton {
    pub fn algebra(&self) -> &FreeAlgebra {
        &self.algebra
    }

    pub fn alphabet(&self) -> &[Var] {
        &self.alphabet
    }

    pub fn states(&self) -> usize {
        self.algebra.len()
    }

    pub fn start(&self) -> u32 {
        self.algebra.identity()
    }

    pub fn accept_state(&self) -> u32 {
        self.accept
    }

    /// False for words using letters outside the alphabet.
    pub fn accepts(&self, w: &Word) -> bool {
        self.algebra
            .word_function(w, &self.alphabet)
            .is_ok_and(|s| s == self.accept)
    }

    pub fn language_size(&self) -> LanguageSize {
        language_size(&self.algebra, self.accept)
    }
}

/// A variable ordered after everything in `content`: the first ASCII
/// letter past the largest one used, else `[y1]`, `[y2]`, ...
pub fn fresh_variable(content: &[Var]) -> Var {
    let top = content.iter().max().copied();
    ('a'..='z')
        .chain('A'..='Z')
        .map(|c| Var::new(&c.to_string()))
        .chain((1..).map(|i| Var::indexed("y", i)))
        .find(|&v| top.is_none_or(|t| v > t))
        .expect("infinitely many candidates")
}

/// Variables of `u` in variable order, the alphabet every decider works
/// over so that witnesses are least in that order.
fn sorted_content(u: &Word) -> Vec<Var> {
    let mut content = u.content();
    content.sort();
    content
}

fn word_from_indices(letters: &[usize], alphabet: &[Var]) -> Word {
    Word::from_letters(letters.iter().map(|&i| alphabet[i])).expect("witness words are nonempty")
}

/// Outcome of checking Property (C_l).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyC {
    pub holds: bool,
    /// A two-letter word of height at most `l` and an equal word of another type.
    pub witness: Option<(Word, Word)>,
    pub words_checked: usize,
    /// Largest run exponent enumerated.
    pub exponent_bound: u32,
}

#[derive(Clone, Debug)]
pub enum ContainmentTarget {
    /// `S^1(W)` for a finite word set.
    Dilworth(Vec<Word>),
    /// The Lee monoid `L_l^1`.
    Lee(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evidence {
    pub query: String,
    pub holds: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Containment {
    pub contained: bool,
    pub evidence: Vec<Evidence>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanRow {
    pub word: Word,
    pub isoterm: bool,
    /// Largest number of occurrences of a single variable.
    pub max_occ: usize,
}

impl ScanRow {
    pub fn klimited(&self, k: usize) -> bool {
        self.max_occ <= k
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotermScan {
    pub rows: Vec<ScanRow>,
}

impl IsotermScan {
    pub fn isoterms(&self) -> impl Iterator<Item = &ScanRow> {
        self.rows.iter().filter(|r| r.isoterm)
    }

    /// Smallest `k` such that every isoterm found is `k`-limited.
    pub fn isoterm_limit(&self) -> usize {
        self.isoterms().map(|r| r.max_occ).max().unwrap_or(0)
    }
}

/// True when no variable occurs more than `k` times.
pub fn klimited(u: &Word, k: usize) -> bool {
    word_stats(u).occ.values().all(|&c| c <= k)
}

/// Term deciders for one monoid, caching the relatively free monoids they
/// are built on.
///
/// Arbitrary alphabets reduce to the content of the query plus one fresh
/// variable. If `M |= u = v` and `v` uses extra variables `y1 .. yk`,
/// sending `y2 .. yk` to the identity of `M` yields an identity `u = v'`
/// where `v'` still contains `y1` and hence still differs from `u` (and is
/// of another type). So the extra-variable case is exactly: some word over
/// `content(u) + {y}` containing `y` has the word function of `u` in
/// `F_M(n + 1)`. When that monoid is too large to build, isoterm queries
/// switch to an exact candidate enumeration instead.
pub struct TermChecker<'m> {
    monoid: &'m FiniteMonoid,
    config: Config,
    algebras: Mutex<HashMap<usize, Arc<FreeAlgebra>>>,
    fresh: Mutex<HashMap<usize, Arc<Vec<bool>>>>,
    fresh_failed: Mutex<HashSet<usize>>,
}

impl<'m> TermChecker<'m> {
    pub fn new(monoid: &'m FiniteMonoid, config: Config) -> Self {
        TermChecker {
            monoid,
            config,
            algebras: Mutex::new(HashMap::new()),
            fresh: Mutex::new(HashMap::new()),
            fresh_failed: Mutex::new(HashSet::new()),
        }
    }

    pub fn monoid(&self) -> &FiniteMonoid {
        self.monoid
    }

    /// `F_M(n)`, built on first use.
    pub fn algebra(&self, n: usize) -> Result<Arc<FreeAlgebra>> {
        let mut cache = self.algebras.lock().unwrap();
        if let Some(f) = cache.get(&n) {
            return Ok(f.clone());
        }
        let f = Arc::new(FreeAlgebra::build(self.monoid, n, &self.config)?);
        cache.insert(n, f.clone());
        Ok(f)
    }

    /// States of `F_M(n + 1)` reachable by a word containing the last
    /// generator.
    fn fresh_reach(&self, n: usize) -> Result<Arc<Vec<bool>>> {
        if let Some(r) = self.fresh.lock().unwrap().get(&n) {
            return Ok(r.clone());
        }
        let f = self.algebra(n + 1)?;
        let mut reach = vec![false; f.len()];
        let mut queue = VecDeque::new();
        for s in 0..f.len() as u32 {
            let t = f.step(s, n);
            if !reach[t as usize] {
                reach[t as usize] = true;
                queue.push_back(t);
            }
        }
        while let Some(s) = queue.pop_front() {
            for g in 0..=n {
                let t = f.step(s, g);
                if !reach[t as usize] {
                    reach[t as usize] = true;
                    queue.push_back(t);
                }
            }
        }
        let reach = Arc::new(reach);
        self.fresh.lock().unwrap().insert(n, reach.clone());
        Ok(reach)
    }

    pub fn equiv_language(&self, u: &Word, extra_fresh: bool) -> Result<EquivAutomaton> {
        let mut alphabet = sorted_content(u);
        if extra_fresh {
            alphabet.push(fresh_variable(&alphabet));
        }
        let algebra = self.algebra(alphabet.len())?;
        let accept = algebra.word_function(u, &alphabet)?;
        Ok(EquivAutomaton {
            algebra,
            alphabet,
            accept,
        })
    }

    /// `F_M(n + 1)` if it can be built within the fresh-variable work cap.
    fn fresh_algebra(&self, n: usize) -> Result<Option<Arc<FreeAlgebra>>> {
        if let Some(f) = self.algebras.lock().unwrap().get(&(n + 1)) {
            return Ok(Some(f.clone()));
        }
        if self.fresh_failed.lock().unwrap().contains(&n) {
            return Ok(None);
        }
        let cells = u32::try_from(n + 1)
            .ok()
            .and_then(|e| self.monoid.size().checked_pow(e))
            .unwrap_or(usize::MAX);
        let cap = (self.config.fresh_work / cells).min(self.config.element_budget);
        let config = Config {
            element_budget: cap,
            ..self.config.clone()
        };
        match FreeAlgebra::build(self.monoid, n + 1, &config) {
            Ok(f) => {
                let f = Arc::new(f);
                self.algebras.lock().unwrap().insert(n + 1, f.clone());
                Ok(Some(f))
            }
            Err(e) if e.is_resource() => {
                self.fresh_failed.lock().unwrap().insert(n);
                Ok(None)
            }
            Err(e) => Err(e),
        }
    }

    /// Least word containing a fresh variable that equals `u`, as letter
    /// indices over `content(u)` followed by the fresh variable.
    fn fresh_violation(&self, u: &Word, content: &[Var]) -> Result<Option<Vec<usize>>> {
        let n = content.len();
        let reach = self.fresh_reach(n)?;
        let f = self.algebra(n + 1)?;
        let mut alphabet = content.to_vec();
        alphabet.push(fresh_variable(content));
        let accept = f.word_function(u, &alphabet)?;
        if !reach[accept as usize] {
            return Ok(None);
        }
        let tree = ProductTree::build(&f, &SmallDfa::seen(n, n + 1));
        tree.path(accept, 1)
            .map(Some)
            .ok_or_else(|| Error::Internal("fresh-variable state reached but no path found".into()))
    }

    /// Fresh-variable check for isoterms without building `F_M(n + 1)`.
    ///
    /// With `bound = None` the class of `u` over its content is `{u}`, so a
    /// violator `v` satisfies `v[y := 1] = u` and is `u` with powers of `y`
    /// inserted between letters. Exponents above `N + p - 1` can be lowered,
    /// which leaves finitely many candidates. With `bound = Some(len)` a
    /// violator over the content is already known and only words up to
    /// that length matter. Candidates are tried in shortlex order and
    /// filtered through `F_M(n)` before the exact check.
    fn fresh_violation_by_candidates(
        &self,
        u: &Word,
        content: &[Var],
        bound: Option<usize>,
    ) -> Result<Option<Vec<usize>>> {
        let n = content.len();
        let f = self.algebra(n)?;
        let letters = f.letters_of(u, content)?;
        let target = f.run(f.identity(), &letters);
        let mut candidates: Vec<Vec<usize>> = Vec::new();
        let budget = usize::try_from(self.config.node_budget).unwrap_or(usize::MAX);
        let too_many =
            || Error::Resource("fresh-variable candidates exceed the node budget".into());
        match bound {
            None => {
                let (index, period) = self.monoid.index_period();
                let choices = index + period;
                let gaps = letters.len() + 1;
                let total = u32::try_from(gaps)
                    .ok()
                    .and_then(|g| choices.checked_pow(g))
                    .filter(|&t| t <= budget)
                    .ok_or_else(too_many)?;
                for idx in 1..total {
                    let mut rest = idx;
                    let mut v = Vec::new();
                    for gap in 0..gaps {
                        v.extend(std::iter::repeat_n(n, rest % choices));
                        rest /= choices;
                        if gap < letters.len() {
                            v.push(letters[gap]);
                        }
                    }
                    candidates.push(v);
                }
            }
            Some(len) => {
                let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
                for _ in 0..len {
                    layer = layer
                        .iter()
                        .flat_map(|w| {
                            (0..=n).map(move |g| {
                                let mut w = w.clone();
                                w.push(g);
                                w
                            })
                        })
                        .collect();
                    if candidates.len() + layer.len() > budget {
                        return Err(too_many());
                    }
                    candidates.extend(layer.iter().filter(|w| w.contains(&n)).cloned());
                }
            }
        }
        candidates.sort_by(|a, b| shortlex(a, b));
        let mut alphabet = content.to_vec();
        alphabet.push(fresh_variable(content));
        let opts = SearchOptions::from(&self.config);
        for v in candidates {
            let projected: Vec<usize> = v.iter().copied().filter(|&g| g != n).collect();
            if f.run(f.identity(), &projected) != target {
                continue;
            }
            let word = word_from_indices(&v, &alphabet);
            if satisfies_with(self.monoid, u, &word, &opts)?.holds {
                return Ok(Some(v));
            }
        }
        Ok(None)
    }

    fn finish(
        &self,
        mode: TermMode,
        content: Vec<Var>,
        same_alphabet: Option<Vec<usize>>,
        fresh: Option<Vec<usize>>,
    ) -> Result<TermVerdict> {
        let n = content.len();
        let mut automaton_sizes = vec![self.algebra(n)?.len()];
        if let Some(f) = self.fresh_algebra(n)? {
            automaton_sizes.push(f.len());
        }
        let mut alphabet = content;
        alphabet.push(fresh_variable(&alphabet));
        let witness = [same_alphabet, fresh]
            .into_iter()
            .flatten()
            .min_by(|a, b| shortlex(a, b))
            .map(|w| word_from_indices(&w, &alphabet));
        Ok(TermVerdict {
            mode,
            status: if witness.is_none() {
                TermStatus::IsTerm
            } else {
                TermStatus::NotTerm
            },
            witness,
            automaton_sizes,
        })
    }

    /// Whether `M |= u = v` forces `v = u`.
    ///
    /// Over `content(u)` the class of `u` must be exactly `{u}`: trim the
    /// Cayley automaton to co-accessible states, reject on a cycle, and
    /// otherwise count accepting paths. Words with a fresh variable are
    /// handled as described on [`TermChecker`].
    pub fn is_isoterm(&self, u: &Word) -> Result<TermVerdict> {
        let content = sorted_content(u);
        let n = content.len();
        let f = self.algebra(n)?;
        let letters = f.letters_of(u, &content)?;
        let accept = f.run(f.identity(), &letters);
        let singleton = language_size(&f, accept) == LanguageSize::Finite(1);
        let same = if singleton {
            None
        } else {
            let tree = ProductTree::build(&f, &SmallDfa::prefix_tracker(&letters, n));
            let w = tree
                .least_path(accept, |q| q != letters.len())
                .ok_or_else(|| {
                    Error::Internal("class is not a singleton but has no other word".into())
                })?;
            Some(w)
        };
        let fresh = if self.fresh_algebra(n)?.is_some() {
            self.fresh_violation(u, &content)?
        } else {
            self.fresh_violation_by_candidates(u, &content, same.as_ref().map(Vec::len))?
        };
        self.finish(TermMode::Isoterm, content, same, fresh)
    }

    /// Whether `M |= u = v` forces `v` to be of the same type as `u`:
    /// the class of `u` must be included in `c1+ c2+ ... cr+`, decided by
    /// reachability in the product with the complement.
    pub fn is_tau_term_sametype(&self, u: &Word) -> Result<TermVerdict> {
        let content = sorted_content(u);
        let n = content.len();
        let f = self.algebra(n)?;
        let accept = f.word_function(u, &content)?;
        let shape =
            shape_letters(&shape_of(u), &content).expect("shape letters lie in the content");
        let r = shape.len();
        let tree = ProductTree::build(&f, &SmallDfa::same_type(&shape, n));
        let same = tree.least_path(accept, |q| q != r);
        if self.fresh_algebra(n)?.is_none() {
            return Err(Error::Resource(format!(
                "same-type check over {n} variables needs F_M({}) beyond the fresh-variable work cap",
                n + 1
            )));
        }
        let fresh = self.fresh_violation(u, &content)?;
        self.finish(TermMode::Sametype, content, same, fresh)
    }

    /// Property (C_l): every word over `{x, y}` of height at most `l`
    /// equals only words of its own type.
    ///
    /// Shapes starting with `y` are renamings of those starting with `x` and
    /// are skipped. Run exponents range over `1 ..= N + p - 1` where
    /// `(N, p)` is the index and period of `M`: since `M |= x^(N+p) = x^N`,
    /// a larger exponent can be lowered by `p` without changing either the
    /// word function or the shape.
    pub fn property_c(&self, l: usize) -> Result<PropertyC> {
        if l == 0 {
            return Err(Error::Range("property C needs l >= 1".into()));
        }
        let (index, period) = self.monoid.index_period();
        let emax = (index + period - 1) as u32;
        let xy = [Var::new("x"), Var::new("y")];
        let mut checked = 0usize;
        for h in 1..=l {
            let n = h.min(2);
            let alphabet = &xy[..n];
            let shape: Vec<usize> = (0..h).map(|i| i % 2).collect();
            let f = self.algebra(n)?;
            let tree = ProductTree::build(&f, &SmallDfa::same_type(&shape, n));
            let reach = self.fresh_reach(n)?;
            let f1 = self.algebra(n + 1)?;
            let mut alphabet1 = alphabet.to_vec();
            alphabet1.push(fresh_variable(alphabet));

            let total = (emax as usize).pow(h as u32);
            let word_at = |idx: usize| -> Word {
                let mut rest = idx;
                let mut exps = vec![1u32; h];
                for e in exps.iter_mut().rev() {
                    *e = 1 + (rest % emax as usize) as u32;
                    rest /= emax as usize;
                }
                Word::from_runs(shape.iter().zip(exps).map(|(&s, e)| (alphabet[s], e)))
                    .expect("nonempty")
            };
            let fails = |idx: usize| -> bool {
                let u = word_at(idx);
                let acc = f.word_function(&u, alphabet).expect("alphabet covers u");
                let other_type = (0..h + 2).any(|q| q != h && tree.reached(acc, q));
                let acc1 = f1.word_function(&u, &alphabet1).expect("alphabet covers u");
                other_type || reach[acc1 as usize]
            };
            let failure = if self.config.workers > 1 {
                self.config
                    .install(|| (0..total).into_par_iter().find_first(|&i| fails(i)))
            } else {
                (0..total).find(|&i| fails(i))
            };
            checked += failure.map_or(total, |i| i + 1);
            if let Some(i) = failure {
                let u = word_at(i);
                let verdict = self.is_tau_term_sametype(&u)?;
                let v = verdict.witness.ok_or_else(|| {
                    Error::Internal("property C failure without a witness".into())
                })?;
                return Ok(PropertyC {
                    holds: false,
                    witness: Some((u, v)),
                    words_checked: checked,
                    exponent_bound: emax,
                });
            }
        }
        Ok(PropertyC {
            holds: true,
            witness: None,
            words_checked: checked,
            exponent_bound: emax,
        })
    }

    /// Whether the variety of `M` contains the target: for `S^1(W)` every
    /// word of `W` must be an isoterm, for `L_l^1` Property (C_l) must hold.
    pub fn variety_containment(&self, target: &ContainmentTarget) -> Result<Containment> {
        let evidence = match target {
            ContainmentTarget::Dilworth(words) => words
                .iter()
                .map(|w| {
                    let v = self.is_isoterm(w)?;
                    Ok(Evidence {
                        query: format!("isoterm {w}"),
                        holds: v.is_term(),
                        witness: v.witness.map(|x| x.to_string()),
                    })
                })
                .collect::<Result<Vec<_>>>()?,
            ContainmentTarget::Lee(l) => {
                let p = self.property_c(*l)?;
                vec![Evidence {
                    query: format!("property C_{l}"),
                    holds: p.holds,
                    witness: p.witness.map(|(u, v)| format!("{u} = {v}")),
                }]
            }
        };
        Ok(Containment {
            contained: evidence.iter().all(|e| e.holds),
            evidence,
        })
    }

    /// Every word over `content(u)` of at most `max_len` letters equal to
    /// `u` in `M`, shortest first, then in letter order.
    pub fn enumerate_equivalent(&self, u: &Word, max_len: usize) -> Result<Vec<Word>> {
        let automaton = self.equiv_language(u, false)?;
        let f = automaton.algebra();
        let dist = distance_to(f, automaton.accept_state());
        let mut found: Vec<Vec<usize>> = Vec::new();
        let mut path = Vec::new();
        let mut nodes = 0u64;
        #[allow(clippy::too_many_arguments)]
        fn walk(
            f: &FreeAlgebra,
            s: u32,
            accept: u32,
            dist: &[u32],
            max_len: usize,
            path: &mut Vec<usize>,
            found: &mut Vec<Vec<usize>>,
            nodes: &mut u64,
            budget: u64,
        ) -> Result<()> {
            *nodes += 1;
            if *nodes > budget {
                return Err(Error::Resource(format!(
                    "node budget of {budget} exhausted"
                )));
            }
            if s == accept && !path.is_empty() {
                found.push(path.clone());
            }
            for g in 0..f.generators() {
                let t = f.step(s, g);
                let d = dist[t as usize];
                if d != u32::MAX && path.len() + 1 + d as usize <= max_len {
                    path.push(g);
                    walk(f, t, accept, dist, max_len, path, found, nodes, budget)?;
                    path.pop();
                }
            }
            Ok(())
        }
        if dist[automaton.start() as usize] != u32::MAX {
            walk(
                f,
                automaton.start(),
                automaton.accept_state(),
                &dist,
                max_len,
                &mut path,
                &mut found,
                &mut nodes,
                self.config.node_budget,
            )?;
        }
        found.sort_by(|a, b| shortlex(a, b));
        Ok(found
            .iter()
            .map(|w| word_from_indices(w, automaton.alphabet()))
            .collect())
    }

    /// Classifies every word of length `1 ..= max_len` over the first
    /// `alphabet_size` letters `a, b, c, ...`.
    pub fn isoterm_scan(&self, max_len: usize, alphabet_size: usize) -> Result<IsotermScan> {
        if alphabet_size == 0 || alphabet_size > 26 {
            return Err(Error::Range("alphabet size must be in 1..=26".into()));
        }
        let letters: Vec<Var> = ('a'..='z')
            .take(alphabet_size)
            .map(|c| Var::new(&c.to_string()))
            .collect();
        let mut rows = Vec::new();
        for len in 1..=max_len {
            for idx in 0..alphabet_size.pow(len as u32) {
                let mut rest = idx;
                let mut word = vec![letters[0]; len];
                for slot in word.iter_mut().rev() {
                    *slot = letters[rest % alphabet_size];
                    rest /= alphabet_size;
                }
                let word = Word::from_letters(word).expect("nonempty");
                let isoterm = self.is_isoterm(&word)?.is_term();
                let max_occ = word_stats(&word).occ.values().copied().max().unwrap_or(0);
                rows.push(ScanRow {
                    word,
                    isoterm,
                    max_occ,
                });
            }
        }
        Ok(IsotermScan { rows })
    }
}

pub fn equiv_language(m: &FiniteMonoid, u: &Word, extra_fresh: bool) -> Result<EquivAutomaton> {
    TermChecker::new(m, Config::default()).equiv_language(u, extra_fresh)
}

pub fn is_isoterm(m: &FiniteMonoid, u: &Word) -> Result<TermVerdict> {
    TermChecker::new(m, Config::default()).is_isoterm(u)
}

pub fn is_tau_term_sametype(m: &FiniteMonoid, u: &Word) -> Result<TermVerdict> {
    TermChecker::new(m, Config::default()).is_tau_term_sametype(u)
}

pub fn property_c(m: &FiniteMonoid, l: usize) -> Result<PropertyC> {
    TermChecker::new(m, Config::default()).property_c(l)
}

pub fn variety_containment(m: &FiniteMonoid, target: &ContainmentTarget) -> Result<Containment> {
    TermChecker::new(m, Config::default()).variety_containment(target)
}

pub fn enumerate_equivalent(m: &FiniteMonoid, u: &Word, max_len: usize) -> Result<Vec<Word>> {
    TermChecker::new(m, Config::default()).enumerate_equivalent(u, max_len)
}

pub fn isoterm_scan(m: &FiniteMonoid, max_len: usize, alphabet_size: usize) -> Result<IsotermScan> {
    TermChecker::new(m, Config::default()).isoterm_scan(max_len, alphabet_size)
}

/// Shape of a word over `{x, y}` as a convenience for reports.
pub fn two_letter_shape(h: usize) -> Shape {
    let (x, y) = (Var::new("x"), Var::new("y"));
    Shape::new((0..h).map(|i| if i % 2 == 0 { x } else { y }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{dilworth, lee_monoid};
    use crate::eqcheck::satisfies;
    use crate::words::{parse_word, perkins_words, same_type};

    fn w(s: &str) -> Word {
        parse_word(s).unwrap()
    }

    fn lee(l: usize) -> FiniteMonoid {
        lee_monoid(l).unwrap()
    }

    #[test]
    fn l6_example() {
        let m = lee(6);
        let iso = is_isoterm(&m, &w("xyyxyx")).unwrap();
        assert_eq!(iso.status, TermStatus::NotTerm);
        assert_eq!(iso.witness, Some(w("xyxyyx")));
        let st = is_tau_term_sametype(&m, &w("xyyxyx")).unwrap();
        assert!(st.is_term());
        assert_eq!(st.automaton_sizes, vec![106, 14903]);
    }

    #[test]
    fn l2_xyxy_is_not_a_tau_term() {
        let m = lee(2);
        let v = is_tau_term_sametype(&m, &w("xyxy")).unwrap();
        assert_eq!(v.status, TermStatus::NotTerm);
        // xyyx is shorter in letter order than yxyx, which is equivalent too
        assert_eq!(v.witness, Some(w("xyyx")));
        assert!(satisfies(&m, &w("xyxy"), &w("yxyx")).unwrap().holds);
        assert!(!same_type(&w("xyxy"), &w("yxyx")));
    }

    #[test]
    fn single_variable_is_a_tau_term() {
        for l in 2..=6 {
            assert!(is_tau_term_sametype(&lee(l), &w("x")).unwrap().is_term());
            assert!(is_tau_term_sametype(&lee(l), &w("x^3")).unwrap().is_term());
        }
        assert!(is_isoterm(&lee(2), &w("x")).unwrap().is_term());
        assert!(!is_isoterm(&lee(2), &w("x^2")).unwrap().is_term());
    }

    #[test]
    fn fact_isot_generators() {
        for l in [2, 3] {
            assert!(is_isoterm(&lee(l), &w("ab")).unwrap().is_term());
        }
        for l in [4, 5] {
            for u in ["abab", "a^2b^2", "ab^2a"] {
                assert!(is_isoterm(&lee(l), &w(u)).unwrap().is_term(), "{u} on L{l}");
            }
        }
    }

    #[test]
    fn perkins_words_are_isoterms_of_their_monoid() {
        let m = dilworth(&perkins_words()).unwrap();
        for u in perkins_words() {
            assert!(is_isoterm(&m, &u).unwrap().is_term(), "{u}");
        }
    }

    #[test]
    fn fresh_variable_violation() {
        // the trivial monoid satisfies x = xy
        let v = is_isoterm(&FiniteMonoid::trivial(), &w("x")).unwrap();
        assert_eq!(v.witness, Some(w("y")));
        let v = is_isoterm(&FiniteMonoid::trivial(), &w("ab")).unwrap();
        assert_eq!(v.witness, Some(w("a")));
    }

    #[test]
    fn fresh_variable_choice() {
        assert_eq!(
            fresh_variable(&[Var::new("a"), Var::new("b")]),
            Var::new("c")
        );
        assert_eq!(
            fresh_variable(&[Var::new("y"), Var::new("x")]),
            Var::new("z")
        );
        assert_eq!(fresh_variable(&[Var::new("z")]), Var::new("A"));
        assert_eq!(fresh_variable(&[Var::new("Z")]), Var::indexed("y", 1));
    }

    #[test]
    fn property_c_lee() {
        for l in 2..=5 {
            let p = property_c(&lee(l), l).unwrap();
            assert!(p.holds, "C_{l}");
        }
        assert!(property_c(&lee(6), 5).unwrap().holds);
    }

    #[test]
    fn property_c_l2_fails_at_height_three() {
        let p = property_c(&lee(2), 3).unwrap();
        assert!(!p.holds);
        assert_eq!(p.witness, Some((w("xyyx"), w("xyxy"))));
        let p4 = property_c(&lee(2), 4).unwrap();
        assert_eq!(p4.witness, p.witness);
        assert!(property_c(&lee(2), 0).is_err());
    }

    #[test]
    fn property_c_parallel_matches() {
        let m = lee(2);
        let seq = TermChecker::new(&m, Config::default())
            .property_c(4)
            .unwrap();
        let par = TermChecker::new(&m, Config::default().with_workers(4))
            .property_c(4)
            .unwrap();
        assert_eq!(seq, par);
    }

    #[test]
    fn containment() {
        let c = variety_containment(&lee(2), &ContainmentTarget::Dilworth(vec![w("ab")])).unwrap();
        assert!(c.contained);
        let c = variety_containment(&lee(6), &ContainmentTarget::Lee(5)).unwrap();
        assert!(c.contained);
        let m = dilworth(&[w("ab")]).unwrap();
        assert!(
            variety_containment(&m, &ContainmentTarget::Dilworth(vec![w("ab")]))
                .unwrap()
                .contained
        );
        let c = variety_containment(&lee(2), &ContainmentTarget::Lee(3)).unwrap();
        assert!(!c.contained);
        assert_eq!(c.evidence[0].witness.as_deref(), Some("x y^2 x = x y x y"));
    }

    #[test]
    fn enumerate() {
        let found = enumerate_equivalent(&lee(6), &w("xyyxyx"), 6).unwrap();
        assert_eq!(found, vec![w("xyxyyx"), w("xyyxyx")]);
        // x^2 = x^3 holds in L3
        let powers = enumerate_equivalent(&lee(3), &w("xx"), 5).unwrap();
        assert_eq!(powers, vec![w("x^2"), w("x^3"), w("x^4"), w("x^5")]);
        assert!(enumerate_equivalent(&lee(3), &w("xx"), 1)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn scans() {
        let s = isoterm_scan(&lee(3), 4, 2).unwrap();
        assert_eq!(s.isoterm_limit(), 1);
        assert_eq!(s.rows.len(), 2 + 4 + 8 + 16);
        let s = isoterm_scan(&lee(5), 4, 2).unwrap();
        assert_eq!(s.isoterm_limit(), 2);
        for u in ["abab", "a^2b^2", "ab^2a"] {
            assert!(s.isoterms().any(|r| r.word == w(u)));
        }
        assert!(isoterm_scan(&lee(3), 2, 0).is_err());
    }

    #[test]
    fn klimited_predicate() {
        assert!(klimited(&w("xyyxyx"), 3));
        assert!(!klimited(&w("xyyxyx"), 2));
    }

    #[test]
    fn automaton() {
        let a = equiv_language(&lee(2), &w("x"), false).unwrap();
        assert_eq!(a.states(), 3);
        assert_eq!(a.language_size(), LanguageSize::Finite(1));
        assert!(a.accepts(&w("x")));
        assert!(!a.accepts(&w("x^2")));
        assert!(!a.accepts(&w("y")));
        let a = equiv_language(&lee(6), &w("xyyxyx"), true).unwrap();
        assert_eq!(a.alphabet().len(), 3);
        assert!(a.accepts(&w("xyxyyx")));
    }

    #[test]
    fn report_json() {
        let v = is_isoterm(&lee(6), &w("xyyxyx")).unwrap();
        let j = v.to_json(&w("xyyxyx"));
        assert_eq!(j["status"], "not_term");
        assert_eq!(j["mode"], "isoterm");
        assert_eq!(j["witness"], "x y x y^2 x");
        assert_eq!(j["budget_used"]["elements"], 106 + 14903);
    }
}
