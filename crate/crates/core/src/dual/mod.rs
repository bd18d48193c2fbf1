//! The dual Hopf algebra E(tau_0, tau_1, ...) ⊗ F_p[xi_1, xi_2, ...]
//! (F_2[zeta_1, zeta_2, ...] at p = 2), its pairing with the Milnor basis and
//! the dual of the excess filtration.
//!
//! Dual monomials in degree n are listed in the same order as the Milnor
//! basis, so the pairing matrix in every degree is the identity.

pub mod verify;

use std::collections::HashMap;

use crate::algebra::SteenrodAlgebra;
use crate::combination::Combination;
use crate::error::{Error, Result};
use crate::filtration::{filtration_basis, BasisKind};
use crate::linalg::{Matrix, Subspace};
use crate::milnor::{shuffle_sign, Element};
use crate::monomial::{DualMonomial, MilnorMonomial};
use crate::seq::{BSeq, Seq};

pub type DualElement = Combination<DualMonomial>;
pub type DualTensor = Combination<(DualMonomial, DualMonomial)>;

/// Product of two dual monomials: exterior on the tau's with the Koszul sign
/// of the reordering, polynomial on the xi's.
pub fn product_monomials(p: u32, a: &DualMonomial, b: &DualMonomial) -> DualElement {
    let (ea, eb) = (a.e.indices(), b.e.indices());
    if ea.iter().any(|k| eb.contains(k)) {
        return DualElement::zero(p);
    }
    let sign = if shuffle_sign(&ea, &eb) % 2 == 0 { 1 } else { p - 1 };
    let mut e = ea;
    e.extend(eb);
    let m = DualMonomial::new(BSeq::from_indices(&e), a.r.add(&b.r));
    DualElement::term(p, m, sign)
}

/// Product in the dual algebra; refuses results above the degree cap.
pub fn dual_product(alg: &SteenrodAlgebra, a: &DualElement, b: &DualElement) -> Result<DualElement> {
    if !a.is_zero() && !b.is_zero() {
        alg.ctx().check_degree(a.max_degree() + b.max_degree())?;
    }
    let p = alg.p();
    Ok(a.bilinear(b, |x, y| product_monomials(p, x, y)))
}

/// Product in the tensor square: (a ⊗ b)(c ⊗ d) = (-1)^{|b||c|} ac ⊗ bd.
pub fn tensor_product(p: u32, x: &DualTensor, y: &DualTensor) -> DualTensor {
    let mut out = DualTensor::zero(p);
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

/// Terms as `c a ⊗ b`, joined by ` + `.
pub fn format_tensor(t: &DualTensor) -> String {
    if t.is_zero() {
        return "0".into();
    }
    t.iter()
        .map(|((a, b), c)| if c == 1 { format!("{a} ⊗ {b}") } else { format!("{c} {a} ⊗ {b}") })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// xi_t^k as a monomial; xi_0 is the unit.
fn xi_power(t: usize, k: u32) -> DualMonomial {
    if t == 0 {
        DualMonomial::unit()
    } else {
        DualMonomial::new(BSeq::zero(), Seq::unit(t).scale(k))
    }
}

/// mu*(xi_n) = sum_i xi_{n-i}^{p^i} ⊗ xi_i.
pub fn xi_coproduct(p: u32, n: usize) -> DualTensor {
    DualTensor::from_terms(
        p,
        (0..=n).map(|i| ((xi_power(n - i, p.pow(i as u32)), xi_power(i, 1)), 1)),
    )
}

/// mu*(tau_n) = tau_n ⊗ 1 + sum_i xi_{n-i}^{p^i} ⊗ tau_i.
pub fn tau_coproduct(p: u32, n: usize) -> DualTensor {
    let mut out = DualTensor::monomial(p, (DualMonomial::tau(n), DualMonomial::unit()));
    for i in 0..=n {
        out.add_term((xi_power(n - i, p.pow(i as u32)), DualMonomial::tau(i)), 1);
    }
    out
}

/// Coproduct of a dual monomial, extended multiplicatively from the generators.
pub fn coproduct_monomial(p: u32, m: &DualMonomial) -> DualTensor {
    let mut out = DualTensor::monomial(p, (DualMonomial::unit(), DualMonomial::unit()));
    for k in m.e.indices() {
        out = tensor_product(p, &out, &tau_coproduct(p, k));
    }
    for (t, &r) in m.r.entries().iter().enumerate() {
        let g = xi_coproduct(p, t + 1);
        for _ in 0..r {
            out = tensor_product(p, &out, &g);
        }
    }
    out
}

pub fn dual_coproduct(alg: &SteenrodAlgebra, u: &DualElement) -> Result<DualTensor> {
    u.check_cap(alg.ctx())?;
    let p = alg.p();
    Ok(u.linear_map(|m| coproduct_monomial(p, m)))
}

/// The coproduct read off from the Milnor product: the coefficient of
/// x* ⊗ y* in mu*(u) is <u, xy>.
pub fn coproduct_by_pairing(alg: &SteenrodAlgebra, u: &DualElement) -> Result<DualTensor> {
    let p = alg.p();
    let mut out = DualTensor::zero(p);
    let Some(n) = u.require_homogeneous()? else {
        return Ok(out);
    };
    alg.ctx().check_degree(n)?;
    for a in 0..=n {
        let left = alg.basis(a)?;
        let right = alg.basis(n - a)?;
        for x in &left.monomials {
            for y in &right.monomials {
                let c = pairing(&alg.multiply_monomials(x, y), u);
                if c != 0 {
                    out.add_term((DualMonomial::from(x), DualMonomial::from(y)), c);
                }
            }
        }
    }
    Ok(out)
}

/// The diagonal pairing <Q(E)P(R), tau(E')xi(R')> = [E = E'][R = R'].
pub fn pairing(x: &Element, u: &DualElement) -> u32 {
    let p = x.prime();
    x.iter()
        .map(|(m, c)| c * u.coeff(&DualMonomial::from(m)) % p)
        .sum::<u32>()
        % p
}

/// Pairing of tensors, factor by factor.
pub fn tensor_pairing(p: u32, x: &crate::milnor::TensorElement, u: &DualTensor) -> u32 {
    x.iter()
        .map(|((a, b), c)| c * u.coeff(&(DualMonomial::from(a), DualMonomial::from(b))) % p)
        .sum::<u32>()
        % p
}

/// Dual monomials of degree n, in the order of the Milnor basis.
pub fn dual_basis(alg: &SteenrodAlgebra, n: u32) -> Result<Vec<DualMonomial>> {
    Ok(alg.basis(n)?.monomials.iter().map(DualMonomial::from).collect())
}

/// Matrix of <x_a, u_b> for the degree-n bases in canonical order.
pub fn pairing_matrix(alg: &SteenrodAlgebra, n: u32) -> Result<Matrix> {
    let basis = alg.basis(n)?;
    let duals = dual_basis(alg, n)?;
    let mut m = Matrix::zeros(alg.p(), basis.dim(), duals.len());
    for (a, x) in basis.monomials.iter().enumerate() {
        let x = alg.monomial(x.clone());
        for (b, u) in duals.iter().enumerate() {
            m.set(a, b, pairing(&x, &DualElement::monomial(alg.p(), u.clone())));
        }
    }
    Ok(m)
}

pub fn dual_to_vector(alg: &SteenrodAlgebra, u: &DualElement, n: u32) -> Result<Vec<u32>> {
    let basis = alg.basis(n)?;
    let mut v = vec![0; basis.dim()];
    for (m, c) in u.iter() {
        match basis.position(&MilnorMonomial::from(m)) {
            Some(i) => v[i] = c,
            None => {
                return Err(Error::DegreeMismatch {
                    left: m.degree(alg.p()),
                    right: n,
                })
            }
        }
    }
    Ok(v)
}

pub fn dual_from_vector(alg: &SteenrodAlgebra, v: &[u32], n: u32) -> Result<DualElement> {
    let basis = alg.basis(n)?;
    Ok(DualElement::from_terms(
        alg.p(),
        basis
            .monomials
            .iter()
            .zip(v)
            .filter(|(_, &c)| c != 0)
            .map(|(m, &c)| (DualMonomial::from(m), c)),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DualKind {
    /// Spanned by the monomials of level at most i.
    Monomial,
    /// Kernel of restriction to F_{i+1} of the primal algebra.
    Annihilator,
}

/// A subspace of the degree-n part of the dual algebra.
#[derive(Debug, Clone)]
pub struct DualSubspace {
    degree: u32,
    level: i64,
    kind: DualKind,
    elements: Vec<DualElement>,
    space: Subspace,
}

impl DualSubspace {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn level(&self) -> i64 {
        self.level
    }

    pub fn kind(&self) -> DualKind {
        self.kind
    }

    pub fn elements(&self) -> &[DualElement] {
        &self.elements
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.space.ambient()
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn contains(&self, alg: &SteenrodAlgebra, u: &DualElement) -> Result<bool> {
        if u.is_zero() {
            return Ok(true);
        }
        Ok(self.space.contains(&dual_to_vector(alg, u, self.degree)?))
    }

    pub fn equals(&self, other: &DualSubspace) -> bool {
        self.degree == other.degree && self.space.equals(&other.space)
    }
}

/// (F_i A_*)_n in the requested presentation. The annihilator kind is built
/// from the admissible presentation of F_{i+1}.
pub fn dual_filtration_basis(
    alg: &SteenrodAlgebra,
    i: i64,
    n: u32,
    kind: DualKind,
) -> Result<DualSubspace> {
    let p = alg.p();
    let dim = alg.dim(n)?;
    let vectors: Vec<Vec<u32>> = match kind {
        DualKind::Monomial => dual_basis(alg, n)?
            .iter()
            .enumerate()
            .filter(|(_, m)| (m.weight(p) as i64) <= i)
            .map(|(k, _)| crate::linalg::unit_vector(dim, k))
            .collect(),
        DualKind::Annihilator => {
            let upper = filtration_basis(alg, i + 1, n, BasisKind::Admissible)?;
            if upper.dim() == 0 {
                (0..dim).map(|k| crate::linalg::unit_vector(dim, k)).collect()
            } else {
                Matrix::from_rows(p, dim, upper.space().basis()).kernel()
            }
        }
    };
    let space = Subspace::span(p, dim, vectors);
    let elements = space
        .basis()
        .iter()
        .map(|v| dual_from_vector(alg, v, n))
        .collect::<Result<_>>()?;
    Ok(DualSubspace {
        degree: n,
        level: i,
        kind,
        elements,
        space,
    })
}

/// Memoised dual filtration of one kind.
#[derive(Debug)]
pub struct DualFiltration<'a> {
    alg: &'a SteenrodAlgebra,
    kind: DualKind,
    cache: HashMap<(i64, u32), DualSubspace>,
}

impl<'a> DualFiltration<'a> {
    pub fn new(alg: &'a SteenrodAlgebra, kind: DualKind) -> Self {
        DualFiltration {
            alg,
            kind,
            cache: HashMap::new(),
        }
    }

    pub fn kind(&self) -> DualKind {
        self.kind
    }

    pub fn get(&mut self, i: i64, n: u32) -> Result<&DualSubspace> {
        if !self.cache.contains_key(&(i, n)) {
            let s = dual_filtration_basis(self.alg, i, n, self.kind)?;
            self.cache.insert((i, n), s);
        }
        Ok(&self.cache[&(i, n)])
    }

    /// dim E_i A_n = dim F_i A_n - dim F_{i-1} A_n.
    pub fn quotient_dim(&mut self, i: i64, n: u32) -> Result<usize> {
        let hi = self.get(i, n)?.dim();
        let lo = self.get(i - 1, n)?.dim();
        Ok(hi - lo)
    }
}

/// tau_0^e xi_1^i (zeta_1^L at p = 2): the dual top generator of level L.
pub fn dual_top_generator(p: u32, level: u32) -> DualMonomial {
    if p == 2 {
        DualMonomial::from_r(vec![level])
    } else {
        DualMonomial::from_parts(vec![(level % 2) as u8], vec![level / 2])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(p: u32) -> SteenrodAlgebra {
        SteenrodAlgebra::with_prime(p).unwrap()
    }

    #[test]
    fn exterior_signs() {
        let t0 = DualMonomial::tau(0);
        let t1 = DualMonomial::tau(1);
        assert!(product_monomials(3, &t0, &t0).is_zero());
        let both = DualMonomial::from_parts(vec![1, 1], vec![]);
        assert_eq!(product_monomials(3, &t1, &t0), DualElement::term(3, both.clone(), 2));
        assert_eq!(product_monomials(3, &t0, &t1), DualElement::monomial(3, both));
        let x = product_monomials(3, &t0, &DualMonomial::xi(1));
        assert_eq!(x.keys().next().unwrap().weight(3), 3);
    }

    #[test]
    fn generator_coproducts() {
        let a = alg(2);
        let z2 = DualElement::monomial(2, DualMonomial::xi(2));
        let expected = DualTensor::from_terms(
            2,
            [
                ((DualMonomial::xi(2), DualMonomial::unit()), 1),
                ((DualMonomial::from_r(vec![2]), DualMonomial::xi(1)), 1),
                ((DualMonomial::unit(), DualMonomial::xi(2)), 1),
            ],
        );
        assert_eq!(dual_coproduct(&a, &z2).unwrap(), expected);
        assert_eq!(coproduct_by_pairing(&a, &z2).unwrap(), expected);
    }

    #[test]
    fn top_generators() {
        assert_eq!(dual_top_generator(3, 3), DualMonomial::from_parts(vec![1], vec![1]));
        assert_eq!(dual_top_generator(2, 3).degree(2), 3);
    }
}
