//! Elements of free abelian groups.

use std::collections::BTreeMap;
use std::fmt;

/// A finite integer combination of generators; zero coefficients are never
/// stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormalSum<K: Ord> {
    terms: BTreeMap<K, i64>,
}

impl<K: Ord> Default for FormalSum<K> {
    fn default() -> Self {
        FormalSum { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> FormalSum<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn generator(key: K) -> Self {
        Self::term(key, 1)
    }

    pub fn term(key: K, coef: i64) -> Self {
        let mut s = Self::zero();
        s.add_term(key, coef);
        s
    }

    pub fn add_term(&mut self, key: K, coef: i64) {
        if coef == 0 {
            return;
        }
        let e = self.terms.entry(key.clone()).or_insert(0);
        *e += coef;
        if *e == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn coefficient(&self, key: &K) -> i64 {
        self.terms.get(key).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, i64)> {
        self.terms.iter().map(|(k, &c)| (k, c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in other.iter() {
            out.add_term(k.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, s: i64) -> Self {
        let mut out = Self::zero();
        for (k, c) in self.iter() {
            out.add_term(k.clone(), c * s);
        }
        out
    }

    /// Linear extension of `f` on generators.
    pub fn flat_map<L: Ord + Clone, E>(&self, mut f: impl FnMut(&K) -> Result<FormalSum<L>, E>) -> Result<FormalSum<L>, E> {
        let mut out = FormalSum::zero();
        for (k, c) in self.iter() {
            out = out.add(&f(k)?.scale(c));
        }
        Ok(out)
    }
}

impl<K: Ord + Clone> FromIterator<(K, i64)> for FormalSum<K> {
    fn from_iter<I: IntoIterator<Item = (K, i64)>>(iter: I) -> Self {
        let mut s = Self::zero();
        for (k, c) in iter {
            s.add_term(k, c);
        }
        s
    }
}

/// One `<coef> <key>` line per term; the zero sum prints as `0`.
impl<K: Ord + Clone + fmt::Display> fmt::Display for FormalSum<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let lines: Vec<String> = self.iter().map(|(k, c)| format!("{c} {k}")).collect();
        write!(f, "{}", lines.join("\n"))
    }
}
