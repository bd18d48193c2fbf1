//! Sparse F_p-linear combinations of basis keys.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeContext;

/// Keys that carry an internal degree.
pub trait Graded {
    fn degree(&self, p: u32) -> u32;
}

impl Graded for crate::monomial::MilnorMonomial {
    fn degree(&self, p: u32) -> u32 {
        crate::monomial::MilnorMonomial::degree(self, p)
    }
}

impl Graded for crate::monomial::DualMonomial {
    fn degree(&self, p: u32) -> u32 {
        crate::monomial::DualMonomial::degree(self, p)
    }
}

impl Graded for crate::word::Word {
    fn degree(&self, p: u32) -> u32 {
        crate::word::Word::degree(self, p)
    }
}

impl<A: Graded, B: Graded> Graded for (A, B) {
    fn degree(&self, p: u32) -> u32 {
        self.0.degree(p) + self.1.degree(p)
    }
}

/// A finite sum of keys with nonzero coefficients in F_p.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Combination<K: Ord> {
    p: u32,
    terms: BTreeMap<K, u32>,
}

impl<K: Ord + Clone> Combination<K> {
    pub fn zero(p: u32) -> Self {
        Combination {
            p,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(p: u32, key: K) -> Self {
        Self::term(p, key, 1)
    }

    pub fn term(p: u32, key: K, coeff: u32) -> Self {
        let mut c = Self::zero(p);
        c.add_term(key, coeff);
        c
    }

    pub fn from_terms(p: u32, terms: impl IntoIterator<Item = (K, u32)>) -> Self {
        let mut c = Self::zero(p);
        for (k, v) in terms {
            c.add_term(k, v);
        }
        c
    }

    pub fn prime(&self) -> u32 {
        self.p
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

    pub fn coeff(&self, key: &K) -> u32 {
        self.terms.get(key).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, u32)> {
        self.terms.iter().map(|(k, &v)| (k, v))
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn terms(&self) -> &BTreeMap<K, u32> {
        &self.terms
    }

    /// Add `coeff * key` in place.
    pub fn add_term(&mut self, key: K, coeff: u32) {
        let c = coeff % self.p;
        if c == 0 {
            return;
        }
        let p = self.p;
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = (*o.get() + c) % p;
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Add `scale * other` in place without degree checks.
    pub fn add_scaled(&mut self, other: &Self, scale: u32) {
        assert_eq!(self.p, other.p, "prime mismatch");
        let s = scale % self.p;
        if s == 0 {
            return;
        }
        for (k, &v) in &other.terms {
            self.add_term(k.clone(), v * s);
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, 1);
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, self.p - 1);
        out
    }

    pub fn scale(&self, c: u32) -> Self {
        let mut out = Self::zero(self.p);
        out.add_scaled(self, c);
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(self.p - 1)
    }

    pub fn map_keys<L: Ord + Clone>(&self, f: impl Fn(&K) -> L) -> Combination<L> {
        Combination::from_terms(self.p, self.terms.iter().map(|(k, &v)| (f(k), v)))
    }

    /// Keep only the terms whose key satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(&K) -> bool) -> Self {
        Combination {
            p: self.p,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, &v)| (k.clone(), v))
                .collect(),
        }
    }

    /// Linear extension of a map on keys.
    pub fn linear_map<L: Ord + Clone>(&self, f: impl Fn(&K) -> Combination<L>) -> Combination<L> {
        let mut out = Combination::zero(self.p);
        for (k, &v) in &self.terms {
            out.add_scaled(&f(k), v);
        }
        out
    }

    /// Bilinear extension of a map on pairs of keys.
    pub fn bilinear<L: Ord + Clone, M: Ord + Clone>(
        &self,
        other: &Combination<L>,
        f: impl Fn(&K, &L) -> Combination<M>,
    ) -> Combination<M> {
        let mut out = Combination::zero(self.p);
        for (a, &x) in &self.terms {
            for (b, &y) in other.terms() {
                out.add_scaled(&f(a, b), x * y % self.p);
            }
        }
        out
    }
}

impl<K: Ord + Clone + Graded> Combination<K> {
    /// The common degree of all terms; `None` for zero or mixed elements.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|k| k.degree(self.p));
        let d = it.next()?;
        if it.all(|e| e == d) {
            Some(d)
        } else {
            None
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// Degree of a homogeneous element (zero counts as homogeneous of any degree,
    /// reported as `None`).
    pub fn require_homogeneous(&self) -> Result<Option<u32>> {
        if self.is_zero() {
            return Ok(None);
        }
        self.homogeneous_degree().map(Some).ok_or(Error::NotHomogeneous)
    }

    /// Sum that refuses to mix two homogeneous elements of different degree.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if let (Some(a), Some(b)) = (self.homogeneous_degree(), other.homogeneous_degree()) {
            if a != b {
                return Err(Error::DegreeMismatch { left: a, right: b });
            }
        }
        Ok(self.plus(other))
    }

    /// Largest degree among the terms, 0 for the zero element.
    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(|k| k.degree(self.p)).max().unwrap_or(0)
    }

    pub fn check_cap(&self, ctx: &PrimeContext) -> Result<()> {
        ctx.check_degree(self.max_degree())
    }
}

impl<K: Ord + Clone + fmt::Display> fmt::Display for Combination<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (k, &v)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            if v != 1 {
                write!(f, "{v} ")?;
            }
            write!(f, "{k}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::MilnorMonomial as M;

    #[test]
    fn arithmetic() {
        let a = Combination::monomial(2, M::from_r(vec![3])).plus(&Combination::monomial(2, M::from_r(vec![0, 1])));
        let b = a.plus(&Combination::monomial(2, M::from_r(vec![3])));
        assert_eq!(b, Combination::monomial(2, M::from_r(vec![0, 1])));
        let c = Combination::term(3, M::q(0), 1);
        assert!(c.plus(&c.scale(2)).is_zero());
        assert_eq!(c.plus(&Combination::zero(3)), c);
    }

    #[test]
    fn degree_checks() {
        let a = Combination::monomial(2, M::from_r(vec![1]));
        let b = Combination::monomial(2, M::from_r(vec![2]));
        assert!(a.checked_add(&b).is_err());
        assert!(a.checked_add(&Combination::zero(2)).is_ok());
        assert_eq!(a.plus(&b).homogeneous_degree(), None);
        assert_eq!(a.plus(&b).require_homogeneous(), Err(Error::NotHomogeneous));
    }
}
