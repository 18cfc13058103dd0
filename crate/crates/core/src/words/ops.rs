//! Structural statistics and transformations of words.

use indexmap::{IndexMap, IndexSet};

use super::{Var, Word};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordStats {
    /// Variables in order of first occurrence.
    pub content: Vec<Var>,
    /// Variables occurring exactly once.
    pub linear: Vec<Var>,
    pub nonlinear: Vec<Var>,
    pub occ: IndexMap<Var, usize>,
}

pub fn word_stats(u: &Word) -> WordStats {
    let mut occ: IndexMap<Var, usize> = IndexMap::new();
    for r in u.runs() {
        *occ.entry(r.var).or_default() += r.exp as usize;
    }
    let content: Vec<Var> = occ.keys().copied().collect();
    let (linear, nonlinear) = content.iter().partition(|v| occ[*v] == 1);
    WordStats {
        content,
        linear,
        nonlinear,
        occ,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Islands {
    /// Number of islands (maximal runs) per variable.
    pub islands: IndexMap<Var, usize>,
    /// Total number of runs. On two-letter words this is the usual height.
    pub height: usize,
}

pub fn islands_and_height(u: &Word) -> Islands {
    let mut islands: IndexMap<Var, usize> = IndexMap::new();
    for r in u.runs() {
        *islands.entry(r.var).or_default() += 1;
    }
    Islands {
        islands,
        height: u.runs().len(),
    }
}

pub fn height(u: &Word) -> usize {
    u.runs().len()
}

/// The decomposition `a0 t1 a1 ... tm am` of a word around its linear
/// variables. Blocks may be empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Blocks {
    pub blocks: Vec<Option<Word>>,
    pub linear: Vec<Var>,
}

impl Blocks {
    /// Reassembles the word.
    pub fn concat(&self) -> Word {
        let mut letters = Vec::new();
        for (i, b) in self.blocks.iter().enumerate() {
            if let Some(b) = b {
                letters.extend(b.letters());
            }
            if let Some(t) = self.linear.get(i) {
                letters.push(*t);
            }
        }
        Word::from_letters(letters).expect("blocks of a nonempty word")
    }

    pub fn block_content(&self, i: usize) -> IndexSet<Var> {
        self.blocks[i]
            .as_ref()
            .map(|b| b.content().into_iter().collect())
            .unwrap_or_default()
    }
}

pub fn blocks(u: &Word) -> Blocks {
    let stats = word_stats(u);
    let mut blocks = Vec::new();
    let mut linear = Vec::new();
    let mut current: Vec<Var> = Vec::new();
    for x in u.letters() {
        if stats.occ[&x] == 1 {
            blocks.push(Word::from_letters(current.drain(..)).ok());
            linear.push(x);
        } else {
            current.push(x);
        }
    }
    blocks.push(Word::from_letters(current).ok());
    Blocks { blocks, linear }
}

/// Run letters of a word: the canonical representative of its same-type
/// class.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shape {
    letters: Vec<Var>,
}

impl Shape {
    /// Adjacent equal letters are collapsed.
    pub fn new<I: IntoIterator<Item = Var>>(letters: I) -> Shape {
        let mut out: Vec<Var> = Vec::new();
        for v in letters {
            if out.last() != Some(&v) {
                out.push(v);
            }
        }
        Shape { letters: out }
    }

    pub fn letters(&self) -> &[Var] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn to_word(&self) -> Result<Word> {
        Word::from_letters(self.letters.iter().copied())
    }

    /// Shape of the concatenation.
    pub fn concat(&self, other: &Shape) -> Shape {
        Shape::new(self.letters.iter().chain(&other.letters).copied())
    }

    /// All nonempty factors, i.e. contiguous sub-sequences.
    pub fn factors(&self) -> impl Iterator<Item = Shape> + '_ {
        let n = self.letters.len();
        (0..n).flat_map(move |i| {
            (i + 1..=n).map(move |j| Shape {
                letters: self.letters[i..j].to_vec(),
            })
        })
    }

    pub fn compact(&self) -> String {
        self.letters.iter().map(|v| v.to_string()).collect()
    }
}

impl std::fmt::Display for Shape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.compact())
    }
}

impl std::fmt::Debug for Shape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Shape({})", self.compact())
    }
}

pub fn shape_of(u: &Word) -> Shape {
    Shape {
        letters: u.runs().iter().map(|r| r.var).collect(),
    }
}

pub fn same_type(u: &Word, v: &Word) -> bool {
    u.runs().len() == v.runs().len() && u.runs().iter().zip(v.runs()).all(|(a, b)| a.var == b.var)
}

pub fn reverse(u: &Word) -> Word {
    Word::from_runs(u.runs().iter().rev().map(|r| (r.var, r.exp))).expect("nonempty")
}

/// Deletes every variable outside `vars`.
pub fn project(u: &Word, vars: &[Var]) -> Result<Word> {
    Word::from_runs(
        u.runs()
            .iter()
            .filter(|r| vars.contains(&r.var))
            .map(|r| (r.var, r.exp)),
    )
    .map_err(|_| Error::EmptyProjection {
        vars: vars
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(","),
    })
}

/// A map from variables to words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Substitution {
    map: IndexMap<Var, Word>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, var: Var, image: Word) -> Self {
        self.map.insert(var, image);
        self
    }

    pub fn insert(&mut self, var: Var, image: Word) {
        self.map.insert(var, image);
    }

    pub fn get(&self, var: Var) -> Option<&Word> {
        self.map.get(&var)
    }

    /// Extends the map by `x -> x` for every unmapped variable of `vars`.
    pub fn fixing(mut self, vars: &[Var]) -> Self {
        for &v in vars {
            self.map.entry(v).or_insert_with(|| Word::letter(v));
        }
        self
    }

    pub fn identity(vars: &[Var]) -> Self {
        Substitution::new().fixing(vars)
    }
}

pub fn substitute(u: &Word, theta: &Substitution) -> Result<Word> {
    let mut runs = Vec::new();
    for r in u.runs() {
        let image = theta
            .get(r.var)
            .ok_or_else(|| Error::Unmapped(r.var.to_string()))?;
        for _ in 0..r.exp {
            runs.extend(image.runs().iter().map(|s| (s.var, s.exp)));
        }
    }
    Word::from_runs(runs)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equalized {
    pub word: Word,
    /// `(kept, removed)` pairs in the order they were applied.
    pub merges: Vec<(Var, Var)>,
}

/// When the image of `x` is a power of a single variable, that variable.
fn power_base(w: &Word) -> Option<Var> {
    (w.runs().len() == 1).then(|| w.first())
}

/// Renames variables of `u` whose images under `theta` are powers of the
/// same variable, until no such pair is left. Pairs are scanned in order
/// of first occurrence and the earlier variable is kept. The image of the
/// result under `theta` has the same type as the image of `u`.
pub fn equalize(u: &Word, theta: &Substitution) -> Result<Equalized> {
    let mut word = u.clone();
    let mut merges = Vec::new();
    loop {
        let content = word.content();
        let mut bases = Vec::with_capacity(content.len());
        for &x in &content {
            let image = theta.get(x).ok_or_else(|| Error::Unmapped(x.to_string()))?;
            bases.push(power_base(image));
        }
        let pair = (0..content.len())
            .flat_map(|i| (i + 1..content.len()).map(move |j| (i, j)))
            .find(|&(i, j)| bases[i].is_some() && bases[i] == bases[j]);
        let Some((i, j)) = pair else {
            return Ok(Equalized { word, merges });
        };
        let (keep, drop) = (content[i], content[j]);
        word = Word::from_runs(
            word.runs()
                .iter()
                .map(|r| (if r.var == drop { keep } else { r.var }, r.exp)),
        )?;
        merges.push((keep, drop));
    }
}
