//! Automata over the Cayley graph of a relatively free monoid.
//!
//! The Cayley graph is a complete deterministic automaton whose states are
//! word functions. Fixing an accepting state gives the language of all
//! words equal to a given one in the monoid.

use std::cmp::Ordering;
use std::collections::VecDeque;

use crate::eqcheck::FreeAlgebra;
use crate::words::Shape;

/// A small complete DFA over the generator alphabet of a free algebra.
#[derive(Clone, Debug)]
pub struct SmallDfa {
    pub states: usize,
    pub letters: usize,
    pub start: usize,
    table: Vec<usize>,
}

impl SmallDfa {
    pub fn from_fn(
        states: usize,
        letters: usize,
        start: usize,
        f: impl Fn(usize, usize) -> usize,
    ) -> Self {
        let table = (0..states)
            .flat_map(|q| (0..letters).map(move |g| (q, g)))
            .map(|(q, g)| f(q, g))
            .collect();
        SmallDfa {
            states,
            letters,
            start,
            table,
        }
    }

    #[inline]
    pub fn step(&self, q: usize, g: usize) -> usize {
        self.table[q * self.letters + g]
    }

    /// `c1+ c2+ ... cr+` for a shape given as letter indices. State `i` in
    /// `1..=r` means "inside run `i`", `r + 1` is the sink, and `r` is the
    /// only accepting state.
    pub fn same_type(shape: &[usize], letters: usize) -> SmallDfa {
        let r = shape.len();
        let dead = r + 1;
        SmallDfa::from_fn(r + 2, letters, 0, |q, g| {
            if q == dead {
                dead
            } else if q >= 1 && shape[q - 1] == g {
                q
            } else if q < r && shape[q] == g {
                q + 1
            } else {
                dead
            }
        })
    }

    /// Tracks whether the input is still a prefix of `word`. States
    /// `0..=len` count matched letters, `len + 1` means diverged.
    pub fn prefix_tracker(word: &[usize], letters: usize) -> SmallDfa {
        let len = word.len();
        SmallDfa::from_fn(len + 2, letters, 0, |q, g| {
            if q < len && word[q] == g {
                q + 1
            } else {
                len + 1
            }
        })
    }

    /// Two states: whether `letter` has been read.
    pub fn seen(letter: usize, letters: usize) -> SmallDfa {
        SmallDfa::from_fn(
            2,
            letters,
            0,
            |q, g| if q == 1 || g == letter { 1 } else { 0 },
        )
    }
}

/// Letter indices of a shape in an alphabet.
pub fn shape_letters(shape: &Shape, alphabet: &[crate::words::Var]) -> Option<Vec<usize>> {
    shape
        .letters()
        .iter()
        .map(|x| alphabet.iter().position(|a| a == x))
        .collect()
}

/// Breadth-first tree of the product of a free algebra with a small DFA.
///
/// Letters are tried in index order, so the tree path to every node is the
/// shortest and, among those, lexicographically least word reaching it.
pub struct ProductTree {
    q: usize,
    start: usize,
    dist: Vec<u32>,
    parent: Vec<(u32, u8)>,
    /// First edge found back into the start node; closes the least
    /// nonempty path to it.
    back_edge: Option<(u32, u8)>,
}

impl ProductTree {
    pub fn build(f: &FreeAlgebra, dfa: &SmallDfa) -> ProductTree {
        assert_eq!(f.generators(), dfa.letters);
        let q = dfa.states;
        let total = f.len() * q;
        let mut dist = vec![u32::MAX; total];
        let mut parent = vec![(u32::MAX, 0u8); total];
        let start = f.identity() as usize * q + dfa.start;
        dist[start] = 0;
        let mut back_edge = None;
        let mut queue = VecDeque::from([start]);
        while let Some(node) = queue.pop_front() {
            let (s, p) = ((node / q) as u32, node % q);
            for g in 0..dfa.letters {
                let next = f.step(s, g) as usize * q + dfa.step(p, g);
                if next == start && back_edge.is_none() {
                    back_edge = Some((node as u32, g as u8));
                }
                if dist[next] == u32::MAX {
                    dist[next] = dist[node] + 1;
                    parent[next] = (node as u32, g as u8);
                    queue.push_back(next);
                }
            }
        }
        ProductTree {
            q,
            start,
            dist,
            parent,
            back_edge,
        }
    }

    /// Whether a nonempty word reaches the node.
    pub fn reached(&self, state: u32, dfa_state: usize) -> bool {
        let node = state as usize * self.q + dfa_state;
        if node == self.start {
            self.back_edge.is_some()
        } else {
            self.dist[node] != u32::MAX
        }
    }

    /// Least nonempty word reaching the node.
    pub fn path(&self, state: u32, dfa_state: usize) -> Option<Vec<usize>> {
        let node = state as usize * self.q + dfa_state;
        if node == self.start {
            let (p, g) = self.back_edge?;
            let mut out = self.tree_path(p as usize);
            out.push(g as usize);
            return Some(out);
        }
        if self.dist[node] == u32::MAX {
            return None;
        }
        Some(self.tree_path(node))
    }

    fn tree_path(&self, mut node: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.dist[node] as usize);
        while self.dist[node] != 0 {
            let (p, g) = self.parent[node];
            out.push(g as usize);
            node = p as usize;
        }
        out.reverse();
        out
    }

    /// Least nonempty word (by length, then lexicographically) reaching `state`
    /// together with any DFA state accepted by `pick`.
    pub fn least_path(&self, state: u32, pick: impl Fn(usize) -> bool) -> Option<Vec<usize>> {
        (0..self.q)
            .filter(|&p| pick(p))
            .filter_map(|p| self.path(state, p))
            .min_by(|a, b| shortlex(a, b))
    }
}

/// Length first, then lexicographic.
pub fn shortlex(a: &[usize], b: &[usize]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// Number of words in a language, with infinite languages reported as such.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LanguageSize {
    /// Saturates at `u64::MAX`.
    Finite(u64),
    Infinite,
}

/// Size of the language of words leading from the identity to `accept`.
///
/// Every state of the Cayley graph is accessible, so trimming keeps the
/// co-accessible states. A cycle among them means infinitely many words;
/// otherwise the accepted words are the start-to-accept paths of a DAG.
pub fn language_size(f: &FreeAlgebra, accept: u32) -> LanguageSize {
    let n = f.len();
    let letters = f.generators();
    let mut preds: Vec<Vec<u32>> = vec![Vec::new(); n];
    for s in 0..n as u32 {
        for g in 0..letters {
            preds[f.step(s, g) as usize].push(s);
        }
    }
    let mut live = vec![false; n];
    live[accept as usize] = true;
    let mut stack = vec![accept];
    while let Some(s) = stack.pop() {
        for &p in &preds[s as usize] {
            if !live[p as usize] {
                live[p as usize] = true;
                stack.push(p);
            }
        }
    }

    // Kahn's algorithm on the trimmed graph, counting edges with multiplicity.
    let mut indegree = vec![0usize; n];
    for s in (0..n).filter(|&s| live[s]) {
        for g in 0..letters {
            let t = f.step(s as u32, g) as usize;
            if live[t] {
                indegree[t] += 1;
            }
        }
    }
    let mut order = Vec::new();
    let mut queue: VecDeque<usize> = (0..n).filter(|&s| live[s] && indegree[s] == 0).collect();
    while let Some(s) = queue.pop_front() {
        order.push(s);
        for g in 0..letters {
            let t = f.step(s as u32, g) as usize;
            if live[t] {
                indegree[t] -= 1;
                if indegree[t] == 0 {
                    queue.push_back(t);
                }
            }
        }
    }
    if order.len() != live.iter().filter(|&&l| l).count() {
        return LanguageSize::Infinite;
    }
    let mut paths = vec![0u64; n];
    paths[f.identity() as usize] = 1;
    for &s in &order {
        if paths[s] == 0 {
            continue;
        }
        for g in 0..letters {
            let t = f.step(s as u32, g) as usize;
            if live[t] {
                paths[t] = paths[t].saturating_add(paths[s]);
            }
        }
    }
    LanguageSize::Finite(paths[accept as usize])
}

/// Co-accessibility distances: fewest letters from each state to `accept`.
pub fn distance_to(f: &FreeAlgebra, accept: u32) -> Vec<u32> {
    let n = f.len();
    let mut preds: Vec<Vec<u32>> = vec![Vec::new(); n];
    for s in 0..n as u32 {
        for g in 0..f.generators() {
            preds[f.step(s, g) as usize].push(s);
        }
    }
    let mut dist = vec![u32::MAX; n];
    dist[accept as usize] = 0;
    let mut queue = VecDeque::from([accept]);
    while let Some(s) = queue.pop_front() {
        for &p in &preds[s as usize] {
            if dist[p as usize] == u32::MAX {
                dist[p as usize] = dist[s as usize] + 1;
                queue.push_back(p);
            }
        }
    }
    dist
}
