//! Finitely supported index sequences.
//!
//! `Seq` is 1-indexed (r_1, r_2, ...) and `BSeq` is a 0-indexed 0/1 sequence
//! (e_0, e_1, ...). Both are kept trimmed so that derived equality and
//! ordering agree with zero-padded comparison.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Seq(Vec<u32>);

impl Seq {
    pub fn new(mut entries: Vec<u32>) -> Self {
        while entries.last() == Some(&0) {
            entries.pop();
        }
        Seq(entries)
    }

    pub fn zero() -> Self {
        Seq(Vec::new())
    }

    /// The sequence with a single 1 in position `n` (n >= 1).
    pub fn unit(n: usize) -> Self {
        assert!(n >= 1, "Seq positions start at 1");
        let mut v = vec![0; n];
        v[n - 1] = 1;
        Seq(v)
    }

    /// Entry r_i (1-indexed); zero outside the support.
    pub fn get(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// |R|, the sum of the entries.
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &Seq) -> Seq {
        let n = self.len().max(other.len());
        Seq::new((1..=n).map(|i| self.get(i) + other.get(i)).collect())
    }

    /// Componentwise difference, `None` if some entry would be negative.
    pub fn checked_sub(&self, other: &Seq) -> Option<Seq> {
        if other.len() > self.len() {
            return None;
        }
        let mut out = Vec::with_capacity(self.len());
        for i in 1..=self.len() {
            out.push(self.get(i).checked_sub(other.get(i))?);
        }
        Some(Seq::new(out))
    }

    /// The shift s(R) = (0, r_1, r_2, ...).
    pub fn shift(&self) -> Seq {
        if self.is_empty() {
            return Seq::zero();
        }
        let mut v = Vec::with_capacity(self.len() + 1);
        v.push(0);
        v.extend_from_slice(&self.0);
        Seq(v)
    }

    pub fn divisible_by(&self, p: u32) -> bool {
        self.0.iter().all(|r| r % p == 0)
    }

    pub fn div(&self, p: u32) -> Seq {
        Seq::new(self.0.iter().map(|r| r / p).collect())
    }

    pub fn scale(&self, k: u32) -> Seq {
        Seq::new(self.0.iter().map(|r| r * k).collect())
    }

    /// Set entry i (1-indexed), extending as needed.
    pub fn with(&self, i: usize, value: u32) -> Seq {
        assert!(i >= 1);
        let mut v = self.0.clone();
        if v.len() < i {
            v.resize(i, 0);
        }
        v[i - 1] = value;
        Seq::new(v)
    }
}

impl From<Vec<u32>> for Seq {
    fn from(v: Vec<u32>) -> Self {
        Seq::new(v)
    }
}

impl fmt::Display for Seq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, self.0.iter())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BSeq(Vec<u8>);

impl BSeq {
    pub fn new(mut entries: Vec<u8>) -> Self {
        assert!(entries.iter().all(|&e| e <= 1), "BSeq entries must be 0 or 1");
        while entries.last() == Some(&0) {
            entries.pop();
        }
        BSeq(entries)
    }

    pub fn zero() -> Self {
        BSeq(Vec::new())
    }

    /// The sequence with a single 1 at position `k` (0-indexed).
    pub fn unit(k: usize) -> Self {
        let mut v = vec![0; k + 1];
        v[k] = 1;
        BSeq(v)
    }

    pub fn from_indices(indices: &[usize]) -> Self {
        let n = indices.iter().map(|&k| k + 1).max().unwrap_or(0);
        let mut v = vec![0; n];
        for &k in indices {
            v[k] = 1;
        }
        BSeq::new(v)
    }

    pub fn get(&self, k: usize) -> u8 {
        self.0.get(k).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// |E|, the number of ones.
    pub fn total(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    /// Positions of the ones, ascending.
    pub fn indices(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e == 1)
            .map(|(k, _)| k)
            .collect()
    }
}

impl fmt::Display for BSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, self.0.iter())
    }
}

fn write_list<T: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    items: impl Iterator<Item = T>,
) -> fmt::Result {
    write!(f, "(")?;
    for (k, x) in items.enumerate() {
        if k > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, ")")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trimming_and_order() {
        assert_eq!(Seq::new(vec![1, 0, 0]), Seq::new(vec![1]));
        assert!(Seq::new(vec![1]) < Seq::new(vec![1, 1]));
        assert!(Seq::new(vec![0, 1]) < Seq::new(vec![1]));
        assert_eq!(BSeq::new(vec![0, 1, 0]).indices(), vec![1]);
    }

    #[test]
    fn arithmetic() {
        let r = Seq::new(vec![2, 1]);
        assert_eq!(r.shift(), Seq::new(vec![0, 2, 1]));
        assert_eq!(r.add(&Seq::unit(3)), Seq::new(vec![2, 1, 1]));
        assert_eq!(r.checked_sub(&Seq::unit(2)), Some(Seq::new(vec![2])));
        assert_eq!(r.checked_sub(&Seq::unit(3)), None);
        assert_eq!(r.total(), 3);
        assert!(Seq::new(vec![3, 6]).divisible_by(3));
    }
}
