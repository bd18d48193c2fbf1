//! The group functor U_n of unipotent matrices with entries in a graded test
//! ring, and the isomorphism theta_n from algebra maps A(n)_(p)* -> R.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;

use super::ring::{GradedTestRing, RingElement};
use super::{coproduct_monomial, gen_antipode, Gen, UElement, UPolyMonomial};
use crate::error::{Error, Result};

/// An algebra map A(n)_(p)* -> R, stored by its values on the generators
/// x_ij with 1 <= j < i <= n. Multiplicativity holds by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraMap {
    pub n: u32,
    pub values: BTreeMap<Gen, RingElement>,
}

impl AlgebraMap {
    pub fn generators(n: u32) -> Vec<Gen> {
        (2..=n).flat_map(|i| (1..i).map(move |j| Gen::new(i, j))).collect()
    }

    /// The counit: every generator goes to 0.
    pub fn trivial(ring: &GradedTestRing, n: u32) -> Self {
        AlgebraMap {
            n,
            values: Self::generators(n).into_iter().map(|g| (g, ring.zero())).collect(),
        }
    }

    /// Checks that each value is homogeneous of the generator's degree.
    pub fn new(ring: &GradedTestRing, n: u32, values: BTreeMap<Gen, RingElement>) -> Result<Self> {
        let p = ring.p();
        for g in Self::generators(n) {
            let v = values.get(&g).ok_or_else(|| Error::Invalid(format!("no value for {g}")))?;
            check_degree(ring, v, g.degree(p) as i64, &g.to_string())?;
        }
        Ok(AlgebraMap { n, values })
    }

    /// Uniformly random values in the required degrees.
    pub fn random(ring: &GradedTestRing, n: u32, rng: &mut impl Rng) -> Self {
        let p = ring.p();
        let values = Self::generators(n)
            .into_iter()
            .map(|g| {
                let basis = ring.basis(g.degree(p) as i64);
                let v = RingElement::from_terms(p, basis.iter().map(|m| (m.clone(), rng.gen_range(0..p))));
                (g, v)
            })
            .collect();
        AlgebraMap { n, values }
    }

    pub fn value(&self, g: Gen) -> Option<&RingElement> {
        self.values.get(&g)
    }

    /// The value on a monomial: the product of generator values in ascending order.
    pub fn eval_monomial(&self, ring: &GradedTestRing, m: &UPolyMonomial) -> Result<RingElement> {
        let mut out = ring.one();
        for (g, &e) in m.exponents() {
            let v = self
                .values
                .get(g)
                .ok_or_else(|| Error::IndexOutOfRange(format!("{g} is not in A({})", self.n)))?;
            for _ in 0..e {
                out = ring.multiply(&out, v);
            }
        }
        Ok(out)
    }

    pub fn eval(&self, ring: &GradedTestRing, a: &UElement) -> Result<RingElement> {
        let mut out = ring.zero();
        for (m, c) in a.iter() {
            out.add_scaled(&self.eval_monomial(ring, m)?, c);
        }
        Ok(out)
    }

    /// (phi * psi)(x) = sum phi(x') psi(x'') over mu*(x) = sum x' ⊗ x''.
    pub fn convolve_on(&self, other: &AlgebraMap, ring: &GradedTestRing, m: &UPolyMonomial) -> Result<RingElement> {
        let mut out = ring.zero();
        for ((a, b), c) in coproduct_monomial(ring.p(), m).iter() {
            let v = ring.multiply(&self.eval_monomial(ring, a)?, &other.eval_monomial(ring, b)?);
            out.add_scaled(&v, c);
        }
        Ok(out)
    }

    pub fn convolve(&self, other: &AlgebraMap, ring: &GradedTestRing) -> Result<AlgebraMap> {
        if self.n != other.n {
            return Err(Error::Invalid(format!("sizes {} and {} differ", self.n, other.n)));
        }
        let values = Self::generators(self.n)
            .into_iter()
            .map(|g| Ok((g, self.convolve_on(other, ring, &UPolyMonomial::gen(g))?)))
            .collect::<Result<_>>()?;
        Ok(AlgebraMap { n: self.n, values })
    }

    /// phi composed with the antipode.
    pub fn compose_antipode(&self, ring: &GradedTestRing) -> Result<AlgebraMap> {
        let p = ring.p();
        let values = Self::generators(self.n)
            .into_iter()
            .map(|g| Ok((g, self.eval(ring, &gen_antipode(p, g))?)))
            .collect::<Result<_>>()?;
        Ok(AlgebraMap { n: self.n, values })
    }
}

fn check_degree(ring: &GradedTestRing, v: &RingElement, degree: i64, what: &str) -> Result<()> {
    match ring.degree_of(v) {
        None if !v.is_zero() => Err(Error::DegreeConstraint(format!("{what} is not homogeneous"))),
        Some(d) if d != degree => Err(Error::DegreeConstraint(format!("{what} has degree {d}, expected {degree}"))),
        _ => Ok(()),
    }
}

/// A lower unitriangular n x n matrix whose (i, j) entry has the degree of x_ij.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnipotentMatrix {
    n: u32,
    /// Row-major, entries (i, j) for 1 <= i, j <= n.
    entries: Vec<RingElement>,
}

impl UnipotentMatrix {
    pub fn identity(ring: &GradedTestRing, n: u32) -> Self {
        let mut entries = vec![ring.zero(); (n * n) as usize];
        for k in 0..n as usize {
            entries[k * n as usize + k] = ring.one();
        }
        UnipotentMatrix { n, entries }
    }

    /// Validates shape and the degree constraints on every entry.
    pub fn from_entries(ring: &GradedTestRing, n: u32, entries: Vec<RingElement>) -> Result<Self> {
        if entries.len() != (n * n) as usize {
            return Err(Error::Invalid(format!("expected {} entries", n * n)));
        }
        let m = UnipotentMatrix { n, entries };
        m.validate(ring)?;
        Ok(m)
    }

    pub fn validate(&self, ring: &GradedTestRing) -> Result<()> {
        let p = ring.p();
        for i in 1..=self.n {
            for j in 1..=self.n {
                let a = self.get(i, j);
                let what = format!("entry ({i},{j})");
                if i == j {
                    if *a != ring.one() {
                        return Err(Error::DegreeConstraint(format!("{what} is not 1")));
                    }
                } else if i < j {
                    if !a.is_zero() {
                        return Err(Error::DegreeConstraint(format!("{what} is above the diagonal")));
                    }
                } else {
                    check_degree(ring, a, Gen::new(i, j).degree(p) as i64, &what)?;
                }
            }
        }
        Ok(())
    }

    pub fn size(&self) -> u32 {
        self.n
    }

    /// Entry (i, j), 1-indexed.
    pub fn get(&self, i: u32, j: u32) -> &RingElement {
        &self.entries[((i - 1) * self.n + (j - 1)) as usize]
    }

    /// Matrix product; the result is checked to stay in U_n.
    pub fn multiply(&self, other: &UnipotentMatrix, ring: &GradedTestRing) -> Result<UnipotentMatrix> {
        if self.n != other.n {
            return Err(Error::Invalid(format!("sizes {} and {} differ", self.n, other.n)));
        }
        let n = self.n;
        let mut entries = Vec::with_capacity((n * n) as usize);
        for i in 1..=n {
            for j in 1..=n {
                let mut s = ring.zero();
                for k in 1..=n {
                    s.add_scaled(&ring.multiply(self.get(i, k), other.get(k, j)), 1);
                }
                entries.push(s);
            }
        }
        let m = UnipotentMatrix { n, entries };
        m.validate(ring)?;
        Ok(m)
    }

    pub fn format(&self, ring: &GradedTestRing) -> String {
        let rows: Vec<String> = (1..=self.n)
            .map(|i| {
                let row: Vec<String> = (1..=self.n).map(|j| ring.format(self.get(i, j))).collect();
                format!("[{}]", row.join(", "))
            })
            .collect();
        rows.join(" ")
    }
}

impl fmt::Display for AlgebraMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "map on A({}) with {} generator values", self.n, self.values.len())
    }
}

/// theta_n(f) = A_f, the matrix with (i, j) entry f(x_ij) below the diagonal.
pub fn theta_n(ring: &GradedTestRing, f: &AlgebraMap) -> Result<UnipotentMatrix> {
    let n = f.n;
    let mut entries = Vec::with_capacity((n * n) as usize);
    for i in 1..=n {
        for j in 1..=n {
            entries.push(match i.cmp(&j) {
                std::cmp::Ordering::Equal => ring.one(),
                std::cmp::Ordering::Less => ring.zero(),
                std::cmp::Ordering::Greater => f
                    .value(Gen::new(i, j))
                    .cloned()
                    .ok_or_else(|| Error::Invalid(format!("no value for x({i},{j})")))?,
            });
        }
    }
    UnipotentMatrix::from_entries(ring, n, entries)
}

/// Every algebra map A(n)_(p)* -> R, when there are at most `limit` of them.
pub fn all_maps(ring: &GradedTestRing, n: u32, limit: usize) -> Option<Vec<AlgebraMap>> {
    let p = ring.p();
    let mut maps = vec![BTreeMap::new()];
    for g in AlgebraMap::generators(n) {
        let basis = ring.basis(g.degree(p) as i64);
        let count = (p as usize).checked_pow(basis.len() as u32)?;
        if maps.len().checked_mul(count)? > limit {
            return None;
        }
        let mut next = Vec::with_capacity(maps.len() * count);
        for m in &maps {
            for code in 0..count {
                let mut c = code;
                let mut v = ring.zero();
                for b in basis {
                    v.add_term(b.clone(), (c % p as usize) as u32);
                    c /= p as usize;
                }
                let mut m2 = m.clone();
                m2.insert(g, v);
                next.push(m2);
            }
        }
        maps = next;
    }
    Some(maps.into_iter().map(|values| AlgebraMap { n, values }).collect())
}
