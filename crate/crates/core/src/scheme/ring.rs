//! Small graded-commutative test rings: truncated polynomial generators and
//! exterior generators with integer (possibly negative) degrees.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::combination::Combination;
use crate::error::{Error, Result};
use crate::field::PrimeContext;
use crate::milnor::shuffle_sign;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingGenerator {
    pub name: String,
    pub degree: i64,
    /// 1 for generators that anticommute with each other; defaults to the degree parity.
    #[serde(default)]
    pub parity: Option<u8>,
    /// y^truncation = 0. Odd generators are forced to 2.
    #[serde(default)]
    pub truncation: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct Presentation {
    p: u32,
    generators: Vec<RingGenerator>,
}

/// Exponent vector, one entry per generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingMonomial(pub Vec<u32>);

pub type RingElement = Combination<RingMonomial>;

#[derive(Debug, Clone)]
pub struct GradedTestRing {
    p: u32,
    names: Vec<String>,
    degrees: Vec<i64>,
    odd: Vec<bool>,
    truncations: Vec<u32>,
    by_degree: BTreeMap<i64, Vec<RingMonomial>>,
}

impl GradedTestRing {
    pub fn new(p: u32, generators: Vec<RingGenerator>) -> Result<Self> {
        PrimeContext::with_default_cap(p)?;
        let mut ring = GradedTestRing {
            p,
            names: Vec::new(),
            degrees: Vec::new(),
            odd: Vec::new(),
            truncations: Vec::new(),
            by_degree: BTreeMap::new(),
        };
        for g in generators {
            let parity = g.parity.unwrap_or(g.degree.rem_euclid(2) as u8);
            if parity as i64 != g.degree.rem_euclid(2) {
                return Err(Error::Invalid(format!(
                    "generator {} has degree {} but parity {parity}",
                    g.name, g.degree
                )));
            }
            let odd = parity == 1 && p != 2;
            let trunc = if odd { 2 } else { g.truncation.unwrap_or(0) };
            if trunc < 2 {
                return Err(Error::Invalid(format!("generator {} needs a truncation of at least 2", g.name)));
            }
            ring.names.push(g.name);
            ring.degrees.push(g.degree);
            ring.odd.push(odd);
            ring.truncations.push(trunc);
        }
        ring.index();
        Ok(ring)
    }

    /// Reads `{"p": .., "generators": [{"name", "degree", "parity", "truncation"}]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let pres: Presentation = serde_json::from_str(text)?;
        Self::new(pres.p, pres.generators)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        let pres = Presentation {
            p: self.p,
            generators: (0..self.names.len())
                .map(|k| RingGenerator {
                    name: self.names[k].clone(),
                    degree: self.degrees[k],
                    parity: Some(self.degrees[k].rem_euclid(2) as u8),
                    truncation: Some(self.truncations[k]),
                })
                .collect(),
        };
        serde_json::to_string(&pres).expect("presentation serializes")
    }

    /// F_p[y]/(y^trunc) with deg y = `degree`.
    pub fn truncated_polynomial(p: u32, degree: i64, trunc: u32) -> Result<Self> {
        Self::new(
            p,
            vec![RingGenerator {
                name: "y".into(),
                degree,
                parity: None,
                truncation: Some(trunc),
            }],
        )
    }

    /// E(e) ⊗ F_p[z]/(z^trunc) with e odd of degree `odd_degree`.
    pub fn exterior_polynomial(p: u32, odd_degree: i64, even_degree: i64, trunc: u32) -> Result<Self> {
        Self::new(
            p,
            vec![
                RingGenerator {
                    name: "e".into(),
                    degree: odd_degree,
                    parity: None,
                    truncation: Some(2),
                },
                RingGenerator {
                    name: "z".into(),
                    degree: even_degree,
                    parity: None,
                    truncation: Some(trunc),
                },
            ],
        )
    }

    /// The same ring with one more generator appended.
    pub fn with_generator(&self, g: RingGenerator) -> Result<Self> {
        let mut gens: Vec<RingGenerator> = (0..self.names.len())
            .map(|k| RingGenerator {
                name: self.names[k].clone(),
                degree: self.degrees[k],
                parity: None,
                truncation: Some(self.truncations[k]),
            })
            .collect();
        gens.push(g);
        Self::new(self.p, gens)
    }

    fn index(&mut self) {
        let mut all = vec![vec![]];
        for &t in &self.truncations {
            all = all
                .into_iter()
                .flat_map(|v: Vec<u32>| {
                    (0..t).map(move |e| {
                        let mut w = v.clone();
                        w.push(e);
                        w
                    })
                })
                .collect();
        }
        for v in all {
            let m = RingMonomial(v);
            self.by_degree.entry(self.monomial_degree(&m)).or_default().push(m);
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn generator(&self, k: usize) -> RingElement {
        let mut v = vec![0; self.names.len()];
        v[k] = 1;
        RingElement::monomial(self.p, RingMonomial(v))
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn one(&self) -> RingElement {
        RingElement::monomial(self.p, RingMonomial(vec![0; self.names.len()]))
    }

    pub fn zero(&self) -> RingElement {
        RingElement::zero(self.p)
    }

    pub fn monomial_degree(&self, m: &RingMonomial) -> i64 {
        m.0.iter().zip(&self.degrees).map(|(&e, &d)| e as i64 * d).sum()
    }

    /// Monomial basis of the degree-d part.
    pub fn basis(&self, d: i64) -> &[RingMonomial] {
        self.by_degree.get(&d).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.by_degree.keys().copied()
    }

    /// The common degree of a nonzero homogeneous element.
    pub fn degree_of(&self, a: &RingElement) -> Option<i64> {
        let mut it = a.keys().map(|m| self.monomial_degree(m));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn multiply_monomials(&self, a: &RingMonomial, b: &RingMonomial) -> RingElement {
        let mut v = Vec::with_capacity(a.0.len());
        for k in 0..a.0.len() {
            let e = a.0[k] + b.0[k];
            if e >= self.truncations[k] {
                return self.zero();
            }
            v.push(e);
        }
        let odd_in = |m: &RingMonomial| -> Vec<usize> {
            (0..m.0.len()).filter(|&k| self.odd[k] && m.0[k] == 1).collect()
        };
        let sign = shuffle_sign(&odd_in(a), &odd_in(b));
        RingElement::term(self.p, RingMonomial(v), if sign % 2 == 0 { 1 } else { self.p - 1 })
    }

    pub fn multiply(&self, a: &RingElement, b: &RingElement) -> RingElement {
        a.bilinear(b, |x, y| self.multiply_monomials(x, y))
    }

    pub fn pow(&self, a: &RingElement, k: u64) -> RingElement {
        let mut out = self.one();
        for _ in 0..k {
            out = self.multiply(&out, a);
            if out.is_zero() {
                break;
            }
        }
        out
    }

    pub fn format(&self, a: &RingElement) -> String {
        if a.is_zero() {
            return "0".into();
        }
        a.iter()
            .map(|(m, c)| {
                let factors: Vec<String> = m
                    .0
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(k, &e)| if e == 1 { self.names[k].clone() } else { format!("{}^{e}", self.names[k]) })
                    .collect();
                let body = if factors.is_empty() { "1".to_string() } else { factors.join(" ") };
                if c == 1 { body } else { format!("{c} {body}") }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for GradedTestRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = (0..self.names.len())
            .map(|k| format!("{}[{}]", self.names[k], self.degrees[k]))
            .collect();
        write!(f, "F_{}<{}>", self.p, gens.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncation_and_signs() {
        let r = GradedTestRing::exterior_polynomial(3, 1, 4, 3).unwrap();
        let (e, z) = (r.generator(0), r.generator(1));
        assert!(r.multiply(&e, &e).is_zero());
        assert!(r.pow(&z, 3).is_zero());
        assert_eq!(r.degree_of(&r.multiply(&e, &z)), Some(5));
        let eps = r
            .with_generator(RingGenerator { name: "eps".into(), degree: -1, parity: None, truncation: None })
            .unwrap();
        let (e, t) = (eps.generator(0), eps.generator(2));
        assert_eq!(eps.multiply(&e, &t), eps.multiply(&t, &e).neg());
        assert_eq!(eps.basis(0).len(), 2);
    }

    #[test]
    fn json_round_trip() {
        let r = GradedTestRing::truncated_polynomial(2, 1, 4).unwrap();
        let s = GradedTestRing::from_json(&r.to_json()).unwrap();
        assert_eq!(s.basis(3).len(), 1);
        let bad = r#"{"p": 3, "generators": [{"name": "y", "degree": 2, "parity": 1, "truncation": 3}]}"#;
        assert!(GradedTestRing::from_json(bad).is_err());
        let neg = r#"{"p": 3, "generators": [{"name": "e", "degree": -1}]}"#;
        assert_eq!(GradedTestRing::from_json(neg).unwrap().basis(-1).len(), 1);
    }
}
