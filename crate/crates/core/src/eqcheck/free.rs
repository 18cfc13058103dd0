//! Relatively free monoids: word functions of a finite monoid, closed
//! breadth-first under right multiplication by the generators.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::algebra::{Elem, FiniteMonoid};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::words::{Var, Word};

/// `F_M(n)`: the monoid of all `n`-variable word functions of `M`.
///
/// Element `i` is a vector of length `|M|^n` giving the value of the word
/// at every assignment (assignments enumerated with the first variable most
/// significant). Element 0 is the empty word. Elements are numbered in
/// breadth-first discovery order with generators tried in index order,
/// which also makes [`representative`](Self::representative) the shortest,
/// lexicographically least word for each element.
#[derive(Clone, Debug)]
pub struct FreeAlgebra {
    n: usize,
    stride: usize,
    data: Vec<Elem>,
    trans: Vec<u32>,
    parent: Vec<(u32, u8)>,
}

/// Word-function vector of the `i`-th generator.
fn generator_vector(size: usize, n: usize, i: usize) -> Vec<Elem> {
    let stride = size.pow(n as u32);
    let place = size.pow((n - 1 - i) as u32);
    (0..stride).map(|a| ((a / place) % size) as Elem).collect()
}

fn hash_slice(v: &[Elem]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &x in v {
        h = (h.rotate_left(5) ^ x as u64).wrapping_mul(0x517c_c1b7_2722_0a95);
    }
    h
}

impl FreeAlgebra {
    pub fn build(m: &FiniteMonoid, n: usize, config: &Config) -> Result<FreeAlgebra> {
        if n == 0 {
            return Err(Error::Range("free algebra needs n >= 1".into()));
        }
        if n > u8::MAX as usize {
            return Err(Error::Range("too many generators".into()));
        }
        let size = m.size();
        let stride = (size as u128).pow(n as u32);
        if stride * 2 > config.memory_budget as u128 {
            return Err(Error::Resource(format!(
                "a single word function of {n} variables over {size} elements exceeds the memory budget"
            )));
        }
        let stride = stride as usize;
        let gens: Vec<Vec<Elem>> = (0..n).map(|i| generator_vector(size, n, i)).collect();

        let mut fa = FreeAlgebra {
            n,
            stride,
            data: vec![m.identity(); stride],
            trans: Vec::new(),
            parent: vec![(u32::MAX, 0)],
        };
        let mut buckets: HashMap<u64, u32> = HashMap::new();
        let mut chain: Vec<u32> = vec![u32::MAX];
        buckets.insert(hash_slice(&fa.data), 0);

        const CHUNK: usize = 512;
        let mut next = 0usize;
        while next < fa.parent.len() {
            let end = (next + CHUNK).min(fa.parent.len());
            let compute = |e: usize| -> Vec<Vec<Elem>> {
                let f = &fa.data[e * stride..(e + 1) * stride];
                gens.iter()
                    .map(|g| f.iter().zip(g).map(|(&a, &b)| m.mul(a, b)).collect())
                    .collect()
            };
            let products: Vec<Vec<Vec<Elem>>> = if config.workers > 1 {
                config.install(|| (next..end).into_par_iter().map(compute).collect())
            } else {
                (next..end).map(compute).collect()
            };
            for (e, prods) in (next..end).zip(products) {
                for (g, h) in prods.into_iter().enumerate() {
                    let key = hash_slice(&h);
                    let mut found = None;
                    let mut cur = buckets.get(&key).copied().unwrap_or(u32::MAX);
                    while cur != u32::MAX {
                        let c = cur as usize;
                        if fa.data[c * stride..(c + 1) * stride] == h[..] {
                            found = Some(cur);
                            break;
                        }
                        cur = chain[c];
                    }
                    let id = match found {
                        Some(id) => id,
                        None => {
                            let id = fa.parent.len();
                            if id >= config.element_budget {
                                return Err(Error::Resource(format!(
                                    "free algebra exceeds {} elements",
                                    config.element_budget
                                )));
                            }
                            if (id + 1) * stride * 2 > config.memory_budget {
                                return Err(Error::Resource(format!(
                                    "free algebra exceeds {} bytes",
                                    config.memory_budget
                                )));
                            }
                            fa.data.extend_from_slice(&h);
                            fa.parent.push((e as u32, g as u8));
                            chain.push(buckets.insert(key, id as u32).unwrap_or(u32::MAX));
                            id as u32
                        }
                    };
                    fa.trans.push(id);
                }
            }
            next = end;
        }
        Ok(fa)
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn generators(&self) -> usize {
        self.n
    }

    /// The empty word.
    pub fn identity(&self) -> u32 {
        0
    }

    #[inline]
    pub fn step(&self, state: u32, letter: usize) -> u32 {
        self.trans[state as usize * self.n + letter]
    }

    pub fn run(&self, state: u32, letters: &[usize]) -> u32 {
        letters.iter().fold(state, |s, &g| self.step(s, g))
    }

    /// Values of element `e` at every assignment.
    pub fn function(&self, e: u32) -> &[Elem] {
        &self.data[e as usize * self.stride..(e as usize + 1) * self.stride]
    }

    /// Shortest, lexicographically least generator word for `e`.
    pub fn representative(&self, e: u32) -> Vec<usize> {
        let mut out = Vec::new();
        let mut cur = e;
        while cur != 0 {
            let (p, g) = self.parent[cur as usize];
            out.push(g as usize);
            cur = p;
        }
        out.reverse();
        out
    }

    pub fn multiply(&self, a: u32, b: u32) -> u32 {
        self.run(a, &self.representative(b))
    }

    /// Maps a word onto generator indices by position in `alphabet`.
    pub fn letters_of(&self, u: &Word, alphabet: &[Var]) -> Result<Vec<usize>> {
        if alphabet.len() != self.n {
            return Err(Error::Range(format!(
                "alphabet has {} letters, algebra has {} generators",
                alphabet.len(),
                self.n
            )));
        }
        u.letters()
            .map(|x| {
                alphabet
                    .iter()
                    .position(|&a| a == x)
                    .ok_or_else(|| Error::OutOfAlphabet(x.to_string()))
            })
            .collect()
    }

    /// The element of `u`, by folding generator transitions.
    pub fn word_function(&self, u: &Word, alphabet: &[Var]) -> Result<u32> {
        Ok(self.run(self.identity(), &self.letters_of(u, alphabet)?))
    }

    /// Rechecks closure: every transition target's vector equals the
    /// pointwise product of its source with the generator.
    pub fn verify_closure(&self, m: &FiniteMonoid) -> bool {
        let gens: Vec<Vec<Elem>> = (0..self.n)
            .map(|i| generator_vector(m.size(), self.n, i))
            .collect();
        (0..self.len() as u32).all(|e| {
            gens.iter().enumerate().all(|(g, gv)| {
                let target = self.step(e, g);
                (target as usize) < self.len()
                    && self
                        .function(e)
                        .iter()
                        .zip(gv)
                        .map(|(&a, &b)| m.mul(a, b))
                        .eq(self.function(target).iter().copied())
            })
        })
    }
}

/// `free_algebra(m, n)` with the default configuration.
/// The function `M^n -> M` of `u` as a vector indexed like the elements of
/// [`FreeAlgebra`], computed directly without building the closure.
pub fn word_function_table(m: &FiniteMonoid, u: &Word, alphabet: &[Var]) -> Result<Vec<Elem>> {
    let n = alphabet.len();
    if n == 0 {
        return Err(Error::Range("alphabet must be nonempty".into()));
    }
    let size = m.size();
    let gens: Vec<Vec<Elem>> = (0..n).map(|i| generator_vector(size, n, i)).collect();
    let mut table = vec![m.identity(); size.pow(n as u32)];
    for x in u.letters() {
        let g = alphabet
            .iter()
            .position(|&a| a == x)
            .ok_or_else(|| Error::OutOfAlphabet(x.to_string()))?;
        for (t, &v) in table.iter_mut().zip(&gens[g]) {
            *t = m.mul(*t, v);
        }
    }
    Ok(table)
}

pub fn free_algebra(m: &FiniteMonoid, n: usize) -> Result<FreeAlgebra> {
    FreeAlgebra::build(m, n, &Config::default())
}

pub fn word_function(f: &FreeAlgebra, u: &Word, alphabet: &[Var]) -> Result<u32> {
    f.word_function(u, alphabet)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::lee_monoid;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn l2_one_variable() {
        let m = lee_monoid(2).unwrap();
        let f = free_algebra(&m, 1).unwrap();
        assert_eq!(f.len(), 3);
        let x = [Var::new("x")];
        assert_eq!(
            f.word_function(&w("x^3"), &x).unwrap(),
            f.word_function(&w("x^2"), &x).unwrap()
        );
        assert_ne!(
            f.word_function(&w("x"), &x).unwrap(),
            f.word_function(&w("x^2"), &x).unwrap()
        );
        assert!(f.verify_closure(&m));
    }

    #[test]
    fn trivial_monoid() {
        let f = free_algebra(&FiniteMonoid::trivial(), 3).unwrap();
        assert_eq!(f.len(), 1);
    }

    #[test]
    fn out_of_alphabet() {
        let f = free_algebra(&lee_monoid(2).unwrap(), 1).unwrap();
        assert!(matches!(
            f.word_function(&w("y"), &[Var::new("x")]),
            Err(Error::OutOfAlphabet(_))
        ));
    }

    #[test]
    fn element_budget() {
        let config = Config {
            element_budget: 10,
            ..Config::default()
        };
        let err = FreeAlgebra::build(&lee_monoid(3).unwrap(), 2, &config).unwrap_err();
        assert!(err.is_resource());
    }

    #[test]
    fn representatives_reach_their_elements() {
        let f = free_algebra(&lee_monoid(3).unwrap(), 2).unwrap();
        for e in 0..f.len() as u32 {
            assert_eq!(f.run(0, &f.representative(e)), e);
        }
    }

    #[test]
    fn parallel_build_is_identical() {
        let m = lee_monoid(4).unwrap();
        let a = free_algebra(&m, 2).unwrap();
        let b = FreeAlgebra::build(&m, 2, &Config::default().with_workers(4)).unwrap();
        assert_eq!(a.data, b.data);
        assert_eq!(a.trans, b.trans);
    }
}
