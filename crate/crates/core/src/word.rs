//! Words in the generators of the Steenrod algebra.
//!
//! At an odd prime a word is the alternating record
//! (e_0, i_1, e_1, ..., i_n, e_n) standing for b^{e_0} P^{i_1} b^{e_1} ... P^{i_n} b^{e_n};
//! at p = 2 it is (j_1, ..., j_n) standing for Sq^{j_1} ... Sq^{j_n}.
//! The same shape also carries the preimage sequences of [`Word::varrho`].

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Word {
    odd: bool,
    /// Bockstein flags e_0..e_n; empty at p = 2.
    eps: Vec<u8>,
    /// Exponents i_1..i_n.
    exps: Vec<u32>,
}

impl Word {
    /// Odd-prime word from e_0..e_n and i_1..i_n.
    pub fn odd(eps: Vec<u8>, exps: Vec<u32>) -> Self {
        assert_eq!(eps.len(), exps.len() + 1, "odd word needs one more flag than exponents");
        assert!(eps.iter().all(|&e| e <= 1));
        let mut w = Word {
            odd: true,
            eps,
            exps,
        };
        w.trim();
        w
    }

    /// Word at p = 2.
    pub fn even(exps: Vec<u32>) -> Self {
        let mut w = Word {
            odd: false,
            eps: Vec::new(),
            exps,
        };
        w.trim();
        w
    }

    /// The empty word for the given prime.
    pub fn empty(p: u32) -> Self {
        if p == 2 {
            Word::even(Vec::new())
        } else {
            Word::odd(vec![0], Vec::new())
        }
    }

    /// Build from the flattened form (e_0, i_1, e_1, ...) at odd p, or (j_1, ...) at p = 2.
    pub fn from_flat(p: u32, flat: &[u32]) -> Result<Self> {
        if p == 2 {
            return Ok(Word::even(flat.to_vec()));
        }
        let mut flat = flat.to_vec();
        if flat.is_empty() {
            flat.push(0);
        }
        if flat.len() % 2 == 0 {
            flat.push(0);
        }
        let mut eps = Vec::new();
        let mut exps = Vec::new();
        for (k, &x) in flat.iter().enumerate() {
            if k % 2 == 0 {
                if x > 1 {
                    return Err(Error::Invalid(format!(
                        "Bockstein exponent must be 0 or 1, got {x}"
                    )));
                }
                eps.push(x as u8);
            } else {
                exps.push(x);
            }
        }
        Ok(Word::odd(eps, exps))
    }

    fn trim(&mut self) {
        if self.odd {
            while !self.exps.is_empty()
                && *self.exps.last().unwrap() == 0
                && *self.eps.last().unwrap() == 0
            {
                self.exps.pop();
                self.eps.pop();
            }
        } else {
            while self.exps.last() == Some(&0) {
                self.exps.pop();
            }
        }
    }

    pub fn is_odd(&self) -> bool {
        self.odd
    }

    pub fn eps(&self) -> &[u8] {
        &self.eps
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    /// Number of exponent letters n.
    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty() && self.eps.iter().all(|&e| e == 0)
    }

    /// e_s, zero beyond the end.
    pub fn eps_at(&self, s: usize) -> u32 {
        self.eps.get(s).copied().unwrap_or(0) as u32
    }

    /// i_s (1-indexed), zero beyond the end.
    pub fn exp_at(&self, s: usize) -> u32 {
        if s == 0 {
            return 0;
        }
        self.exps.get(s - 1).copied().unwrap_or(0)
    }

    /// Flattened form, also the packed sequence used for serialization.
    pub fn flat(&self) -> Vec<u32> {
        if !self.odd {
            return self.exps.clone();
        }
        let mut out = Vec::with_capacity(self.eps.len() + self.exps.len());
        out.push(self.eps[0] as u32);
        for (i, &e) in self.exps.iter().zip(&self.eps[1..]) {
            out.push(*i);
            out.push(e as u32);
        }
        out
    }

    pub fn degree(&self, p: u32) -> u32 {
        let s: u32 = self.exps.iter().sum();
        if self.odd {
            2 * (p - 1) * s + self.eps.iter().map(|&e| e as u32).sum::<u32>()
        } else {
            s
        }
    }

    /// Excess, computed both from the closed form 2p i_1 + 2e_0 - d and from
    /// the defining sum; the two are asserted equal.
    pub fn excess(&self, p: u32) -> i64 {
        let d = self.degree(p) as i64;
        let closed = if self.odd {
            2 * p as i64 * self.exp_at(1) as i64 + 2 * self.eps_at(0) as i64 - d
        } else {
            2 * self.exp_at(1) as i64 - d
        };
        let n = self.len();
        let summed = if self.odd {
            let eps_sum: i64 = self.eps.iter().map(|&e| e as i64).sum();
            eps_sum
                + 2 * (1..=n)
                    .map(|s| {
                        self.exp_at(s) as i64
                            - p as i64 * self.exp_at(s + 1) as i64
                            - self.eps_at(s) as i64
                    })
                    .sum::<i64>()
        } else {
            (1..=n)
                .map(|s| self.exp_at(s) as i64 - 2 * self.exp_at(s + 1) as i64)
                .sum()
        };
        assert_eq!(closed, summed, "excess formulas disagree on {self}");
        closed
    }

    pub fn is_admissible(&self, p: u32) -> bool {
        let n = self.len();
        if self.odd {
            (1..=n).all(|s| self.exp_at(s) >= p * self.exp_at(s + 1) + self.eps_at(s))
        } else {
            (1..n).all(|s| self.exp_at(s) >= 2 * self.exp_at(s + 1))
        }
    }

    /// The bijection onto admissible words: i_s = sum_{k>=s} (e_k + j_k) p^{k-s}
    /// (e_k omitted at p = 2).
    pub fn varrho(&self, p: u32) -> Word {
        let n = self.len();
        let mut exps = vec![0u32; n];
        let mut acc = 0u32;
        for s in (1..=n).rev() {
            acc = acc * p + self.exp_at(s) + if self.odd { self.eps_at(s) } else { 0 };
            exps[s - 1] = acc;
        }
        Word {
            odd: self.odd,
            eps: self.eps.clone(),
            exps,
        }
    }

    /// Inverse of [`Word::varrho`]; only defined on admissible words.
    pub fn varrho_inv(&self, p: u32) -> Result<Word> {
        if !self.is_admissible(p) {
            return Err(Error::NotAdmissible(self.to_string()));
        }
        let n = self.len();
        let exps: Vec<u32> = (1..=n)
            .map(|s| {
                let e = if self.odd { self.eps_at(s) } else { 0 };
                self.exp_at(s) - p * self.exp_at(s + 1) - e
            })
            .collect();
        let mut w = Word {
            odd: self.odd,
            eps: self.eps.clone(),
            exps,
        };
        w.trim();
        Ok(w)
    }

    /// J_n = (0, p^{n-1}, 0, ..., 0, 1, 0) at odd p.
    pub fn j_n(p: u32, n: u32) -> Word {
        Word::odd(vec![0; n as usize + 1], (0..n).rev().map(|k| p.pow(k)).collect())
    }

    /// J'_n = (0, p^{n-1}, 0, ..., 0, 1, 1) at odd p.
    pub fn j_prime_n(p: u32, n: u32) -> Word {
        let mut eps = vec![0; n as usize + 1];
        eps[n as usize] = 1;
        Word::odd(eps, (0..n).rev().map(|k| p.pow(k)).collect())
    }

    /// K_n = (2^{n-1}, ..., 2, 1) at p = 2.
    pub fn k_n(n: u32) -> Word {
        Word::even((0..n).rev().map(|k| 1 << k).collect())
    }

    /// The word of the composite `self` followed by `other`.
    pub fn concat(&self, other: &Word) -> Word {
        assert_eq!(self.odd, other.odd);
        if !self.odd {
            let mut exps = self.exps.clone();
            exps.extend_from_slice(&other.exps);
            return Word::even(exps);
        }
        // b^{e_n} b^{e'_0} would need a P^0 between them to stay alternating.
        let mut eps = self.eps.clone();
        let mut exps = self.exps.clone();
        exps.push(0);
        eps.extend_from_slice(&other.eps);
        exps.extend_from_slice(&other.exps);
        Word::odd(eps, exps)
    }
}

impl Ord for Word {
    /// Descending lexicographic order on the zero-padded flattened form.
    fn cmp(&self, other: &Self) -> Ordering {
        self.odd.cmp(&other.odd).then_with(|| {
            let a = self.flat();
            let b = other.flat();
            let n = a.len().max(b.len());
            for k in 0..n {
                let x = a.get(k).copied().unwrap_or(0);
                let y = b.get(k).copied().unwrap_or(0);
                if x != y {
                    return y.cmp(&x);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.flat().iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}
