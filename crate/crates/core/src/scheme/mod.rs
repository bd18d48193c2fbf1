//! The Hopf algebra A_(p)* of coordinate functions on infinite unipotent
//! matrices, its surjection onto the dual Steenrod algebra, the induced
//! filtration, and the group functors it represents.
//!
//! As an algebra A_(p)* is E(x_i1 | i >= 2) ⊗ F_p[x_ij | i > j >= 2] at odd p
//! and F_2[x_ij | i > j >= 1] at p = 2, with
//! mu*(x_ij) = x_ij ⊗ 1 + sum_{j<k<i} x_ik ⊗ x_kj + 1 ⊗ x_ij.

pub mod comodule;
pub mod formal;
pub mod ring;
pub mod unipotent;
pub mod verify;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combination::{Combination, Graded};
use crate::dual::{self, DualElement};
use crate::error::Result;
use crate::field::PrimeContext;
use crate::milnor::shuffle_sign;
use crate::monomial::DualMonomial;
use crate::seq::{BSeq, Seq};

/// The generator x_ij, i > j >= 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Gen {
    pub i: u32,
    pub j: u32,
}

impl Gen {
    pub fn new(i: u32, j: u32) -> Self {
        assert!(i > j && j >= 1, "x_{i}{j} is not a generator");
        Gen { i, j }
    }

    /// Odd-primary x_i1 generate an exterior algebra.
    pub fn is_exterior(self, p: u32) -> bool {
        p != 2 && self.j == 1
    }

    pub fn degree(self, p: u32) -> u32 {
        let (i, j) = (self.i, self.j);
        if p == 2 {
            (1 << (j - 1)) * ((1 << (i - j)) - 1)
        } else if j == 1 {
            2 * p.pow(i - 2) - 1
        } else {
            2 * p.pow(j - 2) * (p.pow(i - j) - 1)
        }
    }

    /// Contribution to the filtration level: 1 for x_i1 and 2p^{j-2} otherwise
    /// at odd p, 2^{j-1} at p = 2.
    pub fn level(self, p: u32) -> u32 {
        if p == 2 {
            1 << (self.j - 1)
        } else if self.j == 1 {
            1
        } else {
            2 * p.pow(self.j - 2)
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x({},{})", self.i, self.j)
    }
}

/// All generators of degree at most `d`, in ascending order.
pub fn generators_up_to(p: u32, d: u32) -> Vec<Gen> {
    let mut out = Vec::new();
    let mut i = 2;
    // x_{i,i-1} has the least degree among the x_i*, and it grows with i
    while Gen::new(i, i - 1).degree(p) <= d {
        for j in 1..i {
            let g = Gen::new(i, j);
            if g.degree(p) <= d {
                out.push(g);
            }
        }
        i += 1;
    }
    out.sort();
    out
}

/// A monomial in the x_ij; exterior generators appear at most once and the
/// sign convention is ascending generator order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct UPolyMonomial(BTreeMap<Gen, u32>);

impl UPolyMonomial {
    pub fn unit() -> Self {
        Self::default()
    }

    pub fn gen(g: Gen) -> Self {
        Self::power(g, 1)
    }

    pub fn power(g: Gen, e: u32) -> Self {
        let mut m = BTreeMap::new();
        if e > 0 {
            m.insert(g, e);
        }
        UPolyMonomial(m)
    }

    pub fn from_exponents(terms: impl IntoIterator<Item = (Gen, u32)>) -> Self {
        UPolyMonomial(terms.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn exponents(&self) -> &BTreeMap<Gen, u32> {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self, p: u32) -> u32 {
        self.0.iter().map(|(g, &e)| e * g.degree(p)).sum()
    }

    /// m + 2 sum p^{j_l - 2} over the factors (sum 2^{j_l - 1} at p = 2).
    pub fn level(&self, p: u32) -> u32 {
        self.0.iter().map(|(g, &e)| e * g.level(p)).sum()
    }

    /// Largest row index among the factors; the monomial lies in A(n) for n at least this.
    pub fn size(&self) -> u32 {
        self.0.keys().map(|g| g.i).max().unwrap_or(1)
    }

    fn exterior(&self, p: u32) -> Vec<usize> {
        self.0
            .keys()
            .filter(|g| g.is_exterior(p))
            .map(|g| g.i as usize)
            .collect()
    }
}

impl Graded for UPolyMonomial {
    fn degree(&self, p: u32) -> u32 {
        UPolyMonomial::degree(self, p)
    }
}

impl fmt::Display for UPolyMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(g, &e)| if e == 1 { g.to_string() } else { format!("{g}^{e}") })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

pub type UElement = Combination<UPolyMonomial>;
pub type UTensor = Combination<(UPolyMonomial, UPolyMonomial)>;

/// Monomials of degree `n`, in ascending order.
pub fn monomials(p: u32, n: u32) -> Vec<UPolyMonomial> {
    fn go(p: u32, gens: &[Gen], left: u32, acc: &mut Vec<(Gen, u32)>, out: &mut Vec<UPolyMonomial>) {
        if left == 0 {
            out.push(UPolyMonomial::from_exponents(acc.iter().copied()));
            return;
        }
        let Some((&g, rest)) = gens.split_first() else {
            return;
        };
        let d = g.degree(p);
        let max = if g.is_exterior(p) { 1 } else { left / d };
        for e in 0..=max.min(left / d) {
            acc.push((g, e));
            go(p, rest, left - e * d, acc, out);
            acc.pop();
        }
    }
    let gens = generators_up_to(p, n);
    let mut out = Vec::new();
    go(p, &gens, n, &mut Vec::new(), &mut out);
    out.sort();
    out
}

pub fn product_monomials(p: u32, a: &UPolyMonomial, b: &UPolyMonomial) -> UElement {
    let (ea, eb) = (a.exterior(p), b.exterior(p));
    if ea.iter().any(|k| eb.contains(k)) {
        return UElement::zero(p);
    }
    let sign = if shuffle_sign(&ea, &eb) % 2 == 0 { 1 } else { p - 1 };
    let mut m = a.0.clone();
    for (g, e) in &b.0 {
        *m.entry(*g).or_insert(0) += e;
    }
    UElement::term(p, UPolyMonomial(m), sign)
}

pub fn product(p: u32, a: &UElement, b: &UElement) -> UElement {
    a.bilinear(b, |x, y| product_monomials(p, x, y))
}

/// Product in the tensor square with the Koszul sign (-1)^{|b||c|}.
pub fn tensor_product(p: u32, x: &UTensor, y: &UTensor) -> UTensor {
    let mut out = UTensor::zero(p);
    for ((a, b), u) in x.iter() {
        for ((c, d), v) in y.iter() {
            let sign = if (b.degree(p) * c.degree(p)) % 2 == 1 { p - 1 } else { 1 };
            let ac = product_monomials(p, a, c);
            let bd = product_monomials(p, b, d);
            let coeff = u * v % p * sign % p;
            for (m1, c1) in ac.iter() {
                for (m2, c2) in bd.iter() {
                    out.add_term((m1.clone(), m2.clone()), coeff * c1 % p * c2 % p);
                }
            }
        }
    }
    out
}

pub fn gen_coproduct(p: u32, g: Gen) -> UTensor {
    let mut out = UTensor::zero(p);
    out.add_term((UPolyMonomial::gen(g), UPolyMonomial::unit()), 1);
    for k in g.j + 1..g.i {
        out.add_term((UPolyMonomial::gen(Gen::new(g.i, k)), UPolyMonomial::gen(Gen::new(k, g.j))), 1);
    }
    out.add_term((UPolyMonomial::unit(), UPolyMonomial::gen(g)), 1);
    out
}

pub fn coproduct_monomial(p: u32, m: &UPolyMonomial) -> UTensor {
    let mut out = UTensor::monomial(p, (UPolyMonomial::unit(), UPolyMonomial::unit()));
    for (&g, &e) in m.exponents() {
        let c = gen_coproduct(p, g);
        for _ in 0..e {
            out = tensor_product(p, &out, &c);
        }
    }
    out
}

pub fn upoly_coproduct(ctx: &PrimeContext, a: &UElement) -> Result<UTensor> {
    a.check_cap(ctx)?;
    Ok(a.linear_map(|m| coproduct_monomial(ctx.p(), m)))
}

pub fn counit(a: &UElement) -> u32 {
    a.coeff(&UPolyMonomial::unit())
}

/// iota*(x_ij) = -x_ij - sum_{j<k<i} x_ik iota*(x_kj).
pub fn gen_antipode(p: u32, g: Gen) -> UElement {
    let mut out = UElement::term(p, UPolyMonomial::gen(g), p - 1);
    for k in g.j + 1..g.i {
        let left = UElement::monomial(p, UPolyMonomial::gen(Gen::new(g.i, k)));
        out.add_scaled(&product(p, &left, &gen_antipode(p, Gen::new(k, g.j))), p - 1);
    }
    out
}

pub fn antipode_monomial(p: u32, m: &UPolyMonomial) -> UElement {
    let mut out = UElement::monomial(p, UPolyMonomial::unit());
    for (&g, &e) in m.exponents() {
        let a = gen_antipode(p, g);
        for _ in 0..e {
            out = product(p, &out, &a);
        }
    }
    out
}

pub fn upoly_antipode(ctx: &PrimeContext, a: &UElement) -> Result<UElement> {
    a.check_cap(ctx)?;
    Ok(a.linear_map(|m| antipode_monomial(ctx.p(), m)))
}

/// rho(x_i1) = -tau_{i-2} and rho(x_ij) = xi_{i-j}^{p^{j-2}} at odd p;
/// rho(x_ij) = zeta_{i-j}^{2^{j-1}} at p = 2.
pub fn rho_gen(p: u32, g: Gen) -> DualElement {
    let t = (g.i - g.j) as usize;
    if p == 2 {
        DualElement::monomial(p, DualMonomial::new(BSeq::zero(), Seq::unit(t).scale(1 << (g.j - 1))))
    } else if g.j == 1 {
        DualElement::term(p, DualMonomial::tau(g.i as usize - 2), p - 1)
    } else {
        DualElement::monomial(p, DualMonomial::new(BSeq::zero(), Seq::unit(t).scale(p.pow(g.j - 2))))
    }
}

pub fn rho_monomial(p: u32, m: &UPolyMonomial) -> DualElement {
    let mut out = DualElement::monomial(p, DualMonomial::unit());
    for (&g, &e) in m.exponents() {
        let r = rho_gen(p, g);
        for _ in 0..e {
            out = out.bilinear(&r, |x, y| dual::product_monomials(p, x, y));
        }
    }
    out
}

pub fn rho(ctx: &PrimeContext, a: &UElement) -> Result<DualElement> {
    a.check_cap(ctx)?;
    Ok(a.linear_map(|m| rho_monomial(ctx.p(), m)))
}

/// Generators of the kernel of rho of degree at most `d`:
/// x_ij - x_{i-j+2,2}^{p^{j-2}} for i > j >= 3 at odd p,
/// x_ij - x_{i-j+1,1}^{2^{j-1}} for i > j >= 2 at p = 2.
pub fn rho_kernel_generators(p: u32, d: u32) -> Vec<UElement> {
    generators_up_to(p, d)
        .into_iter()
        .filter_map(|g| {
            let other = if p == 2 && g.j >= 2 {
                UPolyMonomial::power(Gen::new(g.i - g.j + 1, 1), 1 << (g.j - 1))
            } else if p != 2 && g.j >= 3 {
                UPolyMonomial::power(Gen::new(g.i - g.j + 2, 2), p.pow(g.j - 2))
            } else {
                return None;
            };
            Some(UElement::from_terms(p, [(UPolyMonomial::gen(g), 1), (other, p - 1)]))
        })
        .collect()
}

/// x_21^e prod x_{j+1,j}^{m_j} with sum m_j p^{j-2} = s (odd p), or
/// prod_{j >= 1} x_{j+1,j}^{m_j} with sum m_j 2^{j-1} = s (p = 2).
pub fn top_quotient_monomials(p: u32, s: u32, eps: u32) -> Vec<UPolyMonomial> {
    // (generator, weight) pairs the m_j multiply
    let mut parts: Vec<(Gen, u32)> = Vec::new();
    let mut j = if p == 2 { 1 } else { 2 };
    loop {
        let w = if p == 2 { 1 << (j - 1) } else { p.pow(j - 2) };
        if w > s.max(1) {
            break;
        }
        parts.push((Gen::new(j + 1, j), w));
        j += 1;
    }
    fn go(parts: &[(Gen, u32)], left: u32, acc: &mut Vec<(Gen, u32)>, out: &mut Vec<Vec<(Gen, u32)>>) {
        let Some((&(g, w), rest)) = parts.split_first() else {
            if left == 0 {
                out.push(acc.clone());
            }
            return;
        };
        for m in 0..=left / w {
            acc.push((g, m));
            go(rest, left - m * w, acc, out);
            acc.pop();
        }
    }
    let mut raw = Vec::new();
    go(&parts, s, &mut Vec::new(), &mut raw);
    let mut out: Vec<UPolyMonomial> = raw
        .into_iter()
        .map(|mut terms| {
            if p != 2 {
                terms.push((Gen::new(2, 1), eps));
            }
            UPolyMonomial::from_exponents(terms)
        })
        .collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees() {
        assert_eq!(Gen::new(2, 1).degree(3), 1);
        assert_eq!(Gen::new(3, 1).degree(3), 5);
        assert_eq!(Gen::new(3, 2).degree(3), 4);
        assert_eq!(Gen::new(4, 3).degree(3), 12);
        assert_eq!(Gen::new(3, 2).degree(2), 2);
        assert_eq!(Gen::new(3, 1).degree(2), 3);
        assert_eq!(Gen::new(4, 3).level(3), 6);
    }

    #[test]
    fn generator_lists() {
        let g = generators_up_to(2, 4);
        assert_eq!(g, vec![Gen::new(2, 1), Gen::new(3, 1), Gen::new(3, 2), Gen::new(4, 3)]);
        for p in [2, 3, 5] {
            for n in 0..20 {
                assert!(monomials(p, n).iter().all(|m| m.degree(p) == n));
            }
        }
        assert_eq!(monomials(3, 2), vec![]);
    }

    #[test]
    fn exterior_signs() {
        let a = UPolyMonomial::gen(Gen::new(3, 1));
        let b = UPolyMonomial::gen(Gen::new(2, 1));
        let ab = product_monomials(3, &a, &b);
        let ba = product_monomials(3, &b, &a);
        assert_eq!(ab, ba.neg());
        assert!(product_monomials(3, &a, &a).is_zero());
    }
}
