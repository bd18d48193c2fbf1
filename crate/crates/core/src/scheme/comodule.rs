//! The comodule V_n* over A(n)_(p)* and its comparison with the Milnor
//! coaction on the cohomology of BZ/p.

use std::collections::BTreeMap;

use super::{coproduct_monomial, rho, Gen, UElement, UPolyMonomial, UTensor};
use crate::combination::Combination;
use crate::dual::{self, DualElement};
use crate::error::Result;
use crate::field::PrimeContext;
use crate::monomial::DualMonomial;
use crate::report::Report;

/// phi_n(v_j) = v_j ⊗ 1 + sum_{i > j} v_i ⊗ x_ij, as the list of (i, coefficient).
pub fn coaction(p: u32, n: u32, j: u32) -> Vec<(u32, UElement)> {
    let mut out = vec![(j, UElement::monomial(p, UPolyMonomial::unit()))];
    for i in j + 1..=n {
        out.push((i, UElement::monomial(p, UPolyMonomial::gen(Gen::new(i, j)))));
    }
    out
}

fn double_coaction_left(p: u32, n: u32, j: u32) -> BTreeMap<u32, UTensor> {
    let mut out: BTreeMap<u32, UTensor> = BTreeMap::new();
    for (i, x) in coaction(p, n, j) {
        for (k, y) in coaction(p, n, i) {
            let t = y.bilinear(&x, |a, b| UTensor::monomial(p, (a.clone(), b.clone())));
            out.entry(k).or_insert_with(|| UTensor::zero(p)).add_scaled(&t, 1);
        }
    }
    out.retain(|_, t| !t.is_zero());
    out
}

fn double_coaction_right(p: u32, n: u32, j: u32) -> BTreeMap<u32, UTensor> {
    coaction(p, n, j)
        .into_iter()
        .map(|(k, x)| (k, x.linear_map(|m| coproduct_monomial(p, m))))
        .filter(|(_, t)| !t.is_zero())
        .collect()
}

/// A basis monomial t^a s^b of H*(BZ/p) (t^b at p = 2, where a = 0).
type CohomologyMonomial = (u8, u32);
type Coacted = Combination<(CohomologyMonomial, DualMonomial)>;

/// Product in H*(BZ/p) ⊗ A_*, dropping powers of s (of t at p = 2) beyond `top`.
fn coacted_product(p: u32, x: &Coacted, y: &Coacted, top: u32) -> Coacted {
    let mut out = Coacted::zero(p);
    for (((ta, sa), u), c) in x.iter() {
        for (((tb, sb), v), d) in y.iter() {
            if ta + tb > 1 || sa + sb > top {
                continue;
            }
            // moving t^tb past u
            let odd = *tb as u32 * u.degree(p) % 2 == 1;
            let sign = if odd { p - 1 } else { 1 };
            for (w, e) in dual::product_monomials(p, u, v).iter() {
                out.add_term(((ta + tb, sa + sb), w.clone()), c * d % p * sign % p * e % p);
            }
        }
    }
    out
}

/// psi(v_j) computed from psi(t) and psi(s) as an algebra map.
fn milnor_coaction(p: u32, n: u32, j: u32) -> Coacted {
    let mut psi_s = Coacted::zero(p);
    let mut k = 0u32;
    let top = match (p, n) {
        (2, _) => 1 << (n - 1),
        (_, 0 | 1) => 0,
        _ => p.pow(n - 2),
    };
    while p.pow(k) <= top {
        let xi = if k == 0 { DualMonomial::unit() } else { DualMonomial::xi(k as usize) };
        psi_s.add_term(((0, p.pow(k)), xi), 1);
        k += 1;
    }
    if p == 2 {
        // s stands for t here
        let mut out = Coacted::monomial(p, ((0, 0), DualMonomial::unit()));
        for _ in 0..1u32 << (j - 1) {
            out = coacted_product(p, &out, &psi_s, top);
        }
        return out;
    }
    if j == 1 {
        let mut psi_t = Coacted::monomial(p, ((1, 0), DualMonomial::unit()));
        let mut k = 0u32;
        while p.pow(k) <= top {
            psi_t.add_term(((0, p.pow(k)), DualMonomial::tau(k as usize)), p - 1);
            k += 1;
        }
        return psi_t;
    }
    let mut out = Coacted::monomial(p, ((0, 0), DualMonomial::unit()));
    for _ in 0..p.pow(j - 2) {
        out = coacted_product(p, &out, &psi_s, top);
    }
    out
}

/// The index of v_i carried by a cohomology monomial, if it lies in V_n.
fn v_index(p: u32, n: u32, m: CohomologyMonomial) -> Option<u32> {
    (1..=n).find(|&i| {
        let target = if p == 2 {
            (0, 1 << (i - 1))
        } else if i == 1 {
            (1, 0)
        } else {
            (0, p.pow(i - 2))
        };
        m == target
    })
}

/// Coassociativity of phi_n and agreement of (id ⊗ rho) phi_n with the
/// Milnor coaction, one record per basis vector v_j.
pub fn check_comodule(ctx: &PrimeContext, n: u32) -> Result<Report> {
    let p = ctx.p();
    let mut rep = Report::new();
    for j in 1..=n {
        let (l, r) = (double_coaction_left(p, n, j), double_coaction_right(p, n, j));
        rep.check("comodule", p, &[("n", n as i64), ("j", j as i64), ("part", 0)], l == r, || {
            format!("coassociativity fails on v_{j}")
        });

        let mut via_rho: BTreeMap<u32, DualElement> = BTreeMap::new();
        for (i, x) in coaction(p, n, j) {
            let y = rho(ctx, &x)?;
            if !y.is_zero() {
                via_rho.insert(i, y);
            }
        }
        let mut expected: BTreeMap<u32, DualElement> = BTreeMap::new();
        let mut stray = None;
        for ((m, u), c) in milnor_coaction(p, n, j).iter() {
            match v_index(p, n, *m) {
                Some(i) => expected.entry(i).or_insert_with(|| DualElement::zero(p)).add_term(u.clone(), c),
                None => stray = Some(format!("term t^{} s^{} ⊗ {u} outside V_{n}", m.0, m.1)),
            }
        }
        expected.retain(|_, e| !e.is_zero());
        let ok = stray.is_none() && via_rho == expected;
        rep.check("comodule", p, &[("n", n as i64), ("j", j as i64), ("part", 1)], ok, || {
            stray.clone().unwrap_or_else(|| format!("v_{j}: rho gives {via_rho:?}, coaction gives {expected:?}"))
        });
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn top_vector_is_primitive() {
        let c = coaction(3, 4, 4);
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].0, 4);
    }

    #[test]
    fn first_vector_at_three() {
        let ctx = PrimeContext::with_default_cap(3).unwrap();
        let got: Vec<(u32, DualElement)> = coaction(3, 4, 1)
            .into_iter()
            .map(|(i, x)| (i, rho(&ctx, &x).unwrap()))
            .collect();
        assert_eq!(got[0].1, DualElement::monomial(3, DualMonomial::unit()));
        for (i, y) in &got[1..] {
            assert_eq!(*y, DualElement::term(3, DualMonomial::tau(*i as usize - 2), 2));
        }
    }
}
