//! Finite monoids as Cayley tables, and the Rees-quotient constructions.

use std::collections::HashMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{lee_shape_set, Shape, Var, Word};

/// Dense element index.
pub type Elem = u16;

/// A finite monoid given by its multiplication table.
///
/// Values are immutable once built. Index and period are computed on first
/// use and cached.
#[derive(Clone, Debug)]
pub struct FiniteMonoid {
    labels: Vec<String>,
    table: Vec<Elem>,
    identity: Elem,
    zero: Option<Elem>,
    index_period: OnceLock<(usize, usize)>,
}

impl PartialEq for FiniteMonoid {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
            && self.table == other.table
            && self.identity == other.identity
            && self.zero == other.zero
    }
}

impl Eq for FiniteMonoid {}

/// Builds and validates a monoid. Associativity failures report the first
/// offending triple in index order.
pub fn monoid_from_table(
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    zero: Option<usize>,
) -> Result<FiniteMonoid> {
    let n = labels.len();
    if n == 0 {
        return Err(Error::Table("no elements".into()));
    }
    if n > Elem::MAX as usize {
        return Err(Error::Table(format!("{n} elements is too many")));
    }
    if table.len() != n || table.iter().any(|row| row.len() != n) {
        return Err(Error::Table(format!("table must be {n}x{n}")));
    }
    if let Some(bad) = table.iter().flatten().find(|&&e| e >= n) {
        return Err(Error::Table(format!("entry {bad} out of range")));
    }
    if identity >= n {
        return Err(Error::Table(format!("identity {identity} out of range")));
    }
    if zero.is_some_and(|z| z >= n) {
        return Err(Error::Table("zero out of range".into()));
    }
    let flat: Vec<Elem> = table.iter().flatten().map(|&e| e as Elem).collect();
    let m = FiniteMonoid::from_parts(labels, flat, identity as Elem, zero.map(|z| z as Elem));
    m.validate()?;
    Ok(m)
}

impl FiniteMonoid {
    fn from_parts(
        labels: Vec<String>,
        table: Vec<Elem>,
        identity: Elem,
        zero: Option<Elem>,
    ) -> Self {
        FiniteMonoid {
            labels,
            table,
            identity,
            zero,
            index_period: OnceLock::new(),
        }
    }

    fn validate(&self) -> Result<()> {
        let n = self.size() as Elem;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    let left = self.mul(ab, c);
                    let right = self.mul(a, self.mul(b, c));
                    if left != right {
                        return Err(Error::NotAssociative {
                            a: self.label(a).into(),
                            b: self.label(b).into(),
                            c: self.label(c).into(),
                            left: self.label(left).into(),
                            right: self.label(right).into(),
                        });
                    }
                }
            }
        }
        let e = self.identity;
        for x in self.elements() {
            if self.mul(e, x) != x || self.mul(x, e) != x {
                return Err(Error::IdentityLaw(self.label(x).to_string()));
            }
            if let Some(z) = self.zero {
                if self.mul(z, x) != z || self.mul(x, z) != z {
                    return Err(Error::ZeroLaw(self.label(x).to_string()));
                }
            }
        }
        Ok(())
    }

    /// The one-element monoid.
    pub fn trivial() -> Self {
        FiniteMonoid::from_parts(vec!["1".into()], vec![0], 0, Some(0))
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.size() as Elem
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a as usize * self.labels.len() + b as usize]
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = self.identity;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    pub fn zero(&self) -> Option<Elem> {
        self.zero
    }

    pub fn label(&self, e: Elem) -> &str {
        &self.labels[e as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn element(&self, label: &str) -> Option<Elem> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| i as Elem)
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.size())
            .map(|row| row.iter().map(|&e| e as usize).collect())
            .collect()
    }

    /// The element `z` with `zx = xz = z` for all `x`, if there is one.
    pub fn detect_zero(&self) -> Option<Elem> {
        self.elements().find(|&z| {
            self.elements()
                .all(|x| self.mul(z, x) == z && self.mul(x, z) == z)
        })
    }

    /// Returns a copy with the zero set to whatever `detect_zero` finds.
    pub fn with_detected_zero(mut self) -> Self {
        self.zero = self.detect_zero();
        self
    }

    /// Smallest `(N, p)` with `m^(N+p) = m^N` for every element.
    pub fn index_period(&self) -> (usize, usize) {
        *self.index_period.get_or_init(|| index_period(self))
    }

    pub fn is_aperiodic(&self) -> bool {
        self.index_period().1 == 1
    }

    /// Stable hash of the table, used to key caches.
    pub fn fingerprint(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.table.hash(&mut h);
        self.identity.hash(&mut h);
        h.finish()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&MonoidJson::from(self)).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: MonoidJson = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        monoid_from_table(raw.labels, raw.table, raw.identity, raw.zero)
    }
}

/// On-disk form: `{"labels":[..],"identity":i,"zero":j|null,"table":[[..],..]}`.
#[derive(Serialize, Deserialize)]
struct MonoidJson {
    labels: Vec<String>,
    identity: usize,
    zero: Option<usize>,
    table: Vec<Vec<usize>>,
}

impl From<&FiniteMonoid> for MonoidJson {
    fn from(m: &FiniteMonoid) -> Self {
        MonoidJson {
            labels: m.labels.clone(),
            identity: m.identity as usize,
            zero: m.zero.map(|z| z as usize),
            table: m.rows(),
        }
    }
}

fn index_period(m: &FiniteMonoid) -> (usize, usize) {
    let mut index = 1;
    let mut period = 1;
    for a in m.elements() {
        // powers[i] = a^(i+1)
        let mut powers = vec![a];
        let (i, j) = loop {
            let next = m.mul(*powers.last().unwrap(), a);
            if let Some(i) = powers.iter().position(|&p| p == next) {
                break (i + 1, powers.len() + 1);
            }
            powers.push(next);
        };
        index = index.max(i);
        period = lcm(period, j - i);
    }
    (index, period)
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// `S^1(W)`: nonzero elements are the factors of words in `W`, the empty
/// word is the identity, and any product that is no longer a factor is
/// zero. Elements are ordered by length, then label.
pub fn dilworth(words: &[Word]) -> Result<FiniteMonoid> {
    if words.is_empty() {
        return Err(Error::Range("dilworth needs a nonempty word set".into()));
    }
    let mut factors: Vec<Vec<Var>> = Vec::new();
    for w in words {
        let letters = w.to_letters();
        for i in 0..letters.len() {
            for j in i + 1..=letters.len() {
                factors.push(letters[i..j].to_vec());
            }
        }
    }
    let label = |f: &[Var]| f.iter().map(|v| v.to_string()).collect::<String>();
    factors.sort_by_cached_key(|f| (f.len(), label(f)));
    factors.dedup();

    let n = factors.len() + 2;
    let zero = (n - 1) as Elem;
    let index: HashMap<&[Var], Elem> = factors
        .iter()
        .enumerate()
        .map(|(i, f)| (f.as_slice(), (i + 1) as Elem))
        .collect();
    let mut labels = vec!["1".to_string()];
    labels.extend(factors.iter().map(|f| label(f)));
    labels.push("0".into());

    let mut table = vec![zero; n * n];
    for a in 0..n {
        for b in 0..n {
            let entry = if a == 0 {
                b as Elem
            } else if b == 0 {
                a as Elem
            } else if a == n - 1 || b == n - 1 {
                zero
            } else {
                let mut cat = factors[a - 1].clone();
                cat.extend_from_slice(&factors[b - 1]);
                index.get(cat.as_slice()).copied().unwrap_or(zero)
            };
            table[a * n + b] = entry;
        }
    }
    Ok(FiniteMonoid::from_parts(labels, table, 0, Some(zero)))
}

/// `S^1_tau(W)` for the same-type congruence: elements are the shapes of
/// `W`, an identity and a zero; the product of two shapes is the shape of
/// their concatenation when that lies in `W`, zero otherwise.
pub fn s1_tau_sametype(shapes: &[Shape]) -> Result<FiniteMonoid> {
    if shapes.is_empty() {
        return Err(Error::Range("shape set must be nonempty".into()));
    }
    let mut uniq: Vec<Shape> = Vec::new();
    for s in shapes {
        if s.is_empty() {
            return Err(Error::Range("shapes are nonempty".into()));
        }
        if !uniq.contains(s) {
            uniq.push(s.clone());
        }
    }
    for s in &uniq {
        if let Some(f) = s.factors().find(|f| !uniq.contains(f)) {
            return Err(Error::NotFactorClosed {
                shape: s.compact(),
                factor: f.compact(),
            });
        }
    }
    let n = uniq.len() + 2;
    let zero = (n - 1) as Elem;
    let index: HashMap<&Shape, Elem> = uniq
        .iter()
        .enumerate()
        .map(|(i, s)| (s, (i + 1) as Elem))
        .collect();
    let mut labels = vec!["1".to_string()];
    labels.extend(uniq.iter().map(|s| s.compact()));
    labels.push("0".into());
    let mut table = vec![zero; n * n];
    for a in 0..n {
        for b in 0..n {
            table[a * n + b] = if a == 0 {
                b as Elem
            } else if b == 0 {
                a as Elem
            } else if a == n - 1 || b == n - 1 {
                zero
            } else {
                let cat = uniq[a - 1].concat(&uniq[b - 1]);
                index.get(&cat).copied().unwrap_or(zero)
            };
        }
    }
    Ok(FiniteMonoid::from_parts(labels, table, 0, Some(zero)))
}

/// The Lee monoid `L_l^1`: idempotents `a`, `b` whose alternating product
/// of length `l` starting with `a` is zero, with an identity adjoined.
pub fn lee_monoid(l: usize) -> Result<FiniteMonoid> {
    s1_tau_sametype(&lee_shape_set(l)?)
}

/// The non-identity elements of `lee_monoid(l)`, i.e. the semigroup `L_l`.
pub fn lee_semigroup_elements(l: usize) -> Result<Vec<Elem>> {
    let m = lee_monoid(l)?;
    Ok(m.elements().filter(|&e| e != m.identity()).collect())
}

/// `M^0`: `M` with a new zero element appended, labelled `0` (or `z` if
/// `0` is taken).
pub fn adjoin_zero(m: &FiniteMonoid) -> Result<FiniteMonoid> {
    let n = m.size();
    let mut labels = m.labels().to_vec();
    labels.push(if labels.iter().any(|l| l == "0") {
        "z".into()
    } else {
        "0".into()
    });
    let table = (0..=n)
        .map(|a| {
            (0..=n)
                .map(|b| {
                    if a == n || b == n {
                        n
                    } else {
                        m.mul(a as Elem, b as Elem) as usize
                    }
                })
                .collect()
        })
        .collect();
    monoid_from_table(labels, table, m.identity() as usize, Some(n))
}

/// The monoid generated by maps of `{0, .., degree - 1}` under composition,
/// acting on the right (`f * g` applies `f` first). Elements are numbered in
/// breadth-first order from the identity map; any zero is detected.
pub fn transformation_monoid(
    degree: usize,
    generators: &[Vec<usize>],
    limit: usize,
) -> Result<FiniteMonoid> {
    if generators
        .iter()
        .any(|g| g.len() != degree || g.iter().any(|&p| p >= degree))
    {
        return Err(Error::Range(format!(
            "generators must map 0..{degree} into itself"
        )));
    }
    let identity: Vec<usize> = (0..degree).collect();
    let mut elements = vec![identity.clone()];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
    let compose = |f: &[usize], g: &[usize]| -> Vec<usize> { f.iter().map(|&p| g[p]).collect() };
    let mut next = 0;
    while next < elements.len() {
        for g in generators {
            let h = compose(&elements[next], g);
            if !index.contains_key(&h) {
                if elements.len() >= limit {
                    return Err(Error::Resource(format!(
                        "transformation monoid exceeds {limit} elements"
                    )));
                }
                index.insert(h.clone(), elements.len());
                elements.push(h);
            }
        }
        next += 1;
    }
    let table: Vec<Vec<usize>> = elements
        .iter()
        .map(|f| elements.iter().map(|g| index[&compose(f, g)]).collect())
        .collect();
    let labels = elements
        .iter()
        .map(|f| f.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(""))
        .collect();
    Ok(monoid_from_table(labels, table, 0, None)?.with_detected_zero())
}

/// Values assigned to variables, kept in insertion order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment {
    pairs: Vec<(Var, Elem)>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, var: Var, value: Elem) -> Self {
        self.set(var, value);
        self
    }

    pub fn set(&mut self, var: Var, value: Elem) {
        match self.pairs.iter_mut().find(|(v, _)| *v == var) {
            Some(slot) => slot.1 = value,
            None => self.pairs.push((var, value)),
        }
    }

    pub fn get(&self, var: Var) -> Option<Elem> {
        self.pairs.iter().find(|(v, _)| *v == var).map(|&(_, e)| e)
    }

    pub fn pairs(&self) -> &[(Var, Elem)] {
        &self.pairs
    }
}

impl FromIterator<(Var, Elem)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (Var, Elem)>>(iter: I) -> Self {
        let mut a = Assignment::new();
        for (v, e) in iter {
            a.set(v, e);
        }
        a
    }
}

/// Value of `u` under `theta`. Runs are raised by repeated squaring.
pub fn evaluate(m: &FiniteMonoid, u: &Word, theta: &Assignment) -> Result<Elem> {
    let mut acc = m.identity();
    for r in u.runs() {
        let x = theta
            .get(r.var)
            .ok_or_else(|| Error::Unmapped(r.var.to_string()))?;
        if x as usize >= m.size() {
            return Err(Error::Range(format!("element {x} out of range")));
        }
        acc = m.mul(acc, m.pow(x, r.exp as u64));
    }
    Ok(acc)
}
