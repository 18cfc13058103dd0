//! Generators for the named word families.

use std::collections::HashSet;

use super::{reverse, Shape, Var, Word};
use crate::error::{Error, Result};

fn x(i: usize) -> Var {
    Var::indexed("x", i)
}

/// The generalized Jackson word: for each residue `i = 1..n` the block
/// `x_i^k x_{i+n}^k ... x_{i+n^2-n}^k`, blocks in order of `i`.
pub fn jackson(n: usize, k: u32) -> Result<Word> {
    if n <= 3 || k == 0 {
        return Err(Error::Range(format!(
            "jackson needs n > 3 and k >= 1, got n={n}, k={k}"
        )));
    }
    let runs = (1..=n).flat_map(|i| (0..n).map(move |j| (x(i + j * n), k)));
    Word::from_runs(runs)
}

/// `Z_1 = x1`, `Z_{k+1} = Z_k x_{k+1} Z_k`.
pub fn zimin(k: usize) -> Result<Word> {
    if k == 0 {
        return Err(Error::Range("zimin needs k >= 1".into()));
    }
    let mut z = Word::letter(x(1));
    for i in 2..=k {
        z = z.concat(&Word::letter(x(i))).concat(&z);
    }
    Ok(z)
}

pub fn perkins_words() -> Vec<Word> {
    ["abtba", "atbab", "abab", "aat"]
        .iter()
        .map(|s| s.parse().expect("valid literal"))
        .collect()
}

/// All factors of `b+a+b+a+...` of height at most `l`, as shapes over
/// `{a, b}`. Shapes shorter than `l` may start with either letter; those of
/// height exactly `l` start with `b`. Ordered by length, `a`-first.
pub fn lee_shape_set(l: usize) -> Result<Vec<Shape>> {
    if l < 2 {
        return Err(Error::Range(format!("lee shapes need l >= 2, got {l}")));
    }
    let (a, b) = (Var::new("a"), Var::new("b"));
    let alternating = |start: Var, len: usize| {
        let other = if start == a { b } else { a };
        Shape::new((0..len).map(|i| if i % 2 == 0 { start } else { other }))
    };
    let mut out = Vec::with_capacity(2 * l - 1);
    for len in 1..l {
        out.push(alternating(a, len));
        out.push(alternating(b, len));
    }
    out.push(alternating(b, l));
    Ok(out)
}

/// The pair `(U_n, V_n)`: `x1 ... x_{n^2} J x_{n^2} ... x1` with `J` the
/// generalized Jackson word and its reverse respectively.
pub fn identity_pair_unvn(n: usize, k: u32) -> Result<(Word, Word)> {
    let j = jackson(n, k)?;
    let m = n * n;
    let prefix = Word::from_letters((1..=m).map(x))?;
    let suffix = Word::from_letters((1..=m).rev().map(x))?;
    let u = prefix.concat(&j).concat(&suffix);
    let v = prefix.concat(&reverse(&j)).concat(&suffix);
    Ok((u, v))
}

/// Result of scanning `U_n` for the two combinatorial properties used to
/// separate it from short identities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacksonReport {
    /// Every two-letter factor `x_i x_j` with `i != j` occurs at most once.
    pub p1: bool,
    /// Between any two islands of a variable there are at least `n`
    /// distinct variables.
    pub p2: bool,
    /// Smallest number of distinct variables seen between two islands.
    pub min_between: usize,
}

/// Distinct variables strictly between each consecutive pair of islands of
/// `var`.
pub fn distinct_between_islands(u: &Word, var: Var) -> Vec<usize> {
    let runs = u.runs();
    let positions: Vec<usize> = (0..runs.len()).filter(|&i| runs[i].var == var).collect();
    positions
        .windows(2)
        .map(|w| {
            runs[w[0] + 1..w[1]]
                .iter()
                .map(|r| r.var)
                .collect::<HashSet<_>>()
                .len()
        })
        .collect()
}

pub fn verify_jackson_properties(n: usize, k: u32) -> Result<JacksonReport> {
    let (u, _) = identity_pair_unvn(n, k)?;
    let letters = u.to_letters();
    let mut seen = HashSet::new();
    let p1 = letters
        .windows(2)
        .filter(|w| w[0] != w[1])
        .all(|w| seen.insert((w[0], w[1])));
    let min_between = u
        .content()
        .into_iter()
        .flat_map(|v| distinct_between_islands(&u, v))
        .min()
        .unwrap_or(usize::MAX);
    Ok(JacksonReport {
        p1,
        p2: min_between >= n,
        min_between,
    })
}
