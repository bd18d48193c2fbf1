//! The excess filtration F_i, its graded pieces E_i^j, and the maps built
//! from them: the product isomorphism onto E_{i-j} and the composite gamma.
//!
//! A Milnor monomial Q(E)P(R) lies in F_w exactly for w up to its weight
//! |E| + 2|R| (|R| at p = 2), so F_i^n is spanned by the monomials of weight
//! at least i, A/F_i is represented by the monomials of weight below i, and
//! E_i^j by those of weight exactly i. The admissible presentation (words of
//! excess at least i) is kept alongside so the two can be compared.

pub mod verify;

use crate::admissible::word_to_milnor;
use crate::algebra::SteenrodAlgebra;
use crate::enumerate::admissible_words;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::milnor::Element;
use crate::monomial::MilnorMonomial;
use crate::seq::{BSeq, Seq};
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisKind {
    /// Spanned by admissible words of excess at least i.
    Admissible,
    /// Spanned by Milnor monomials of weight at least i.
    Milnor,
}

/// A subspace of A^n given by spanning elements, with a row-reduced copy of
/// their Milnor coordinates.
#[derive(Debug, Clone)]
pub struct GradedSubspace {
    degree: u32,
    level: i64,
    kind: BasisKind,
    elements: Vec<Element>,
    space: Subspace,
}

impl GradedSubspace {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn level(&self) -> i64 {
        self.level
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn elements(&self) -> &[Element] {
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

    /// Membership by row reduction.
    pub fn contains(&self, alg: &SteenrodAlgebra, a: &Element) -> Result<bool> {
        if a.is_zero() {
            return Ok(true);
        }
        let v = alg.to_vector(a, self.degree)?;
        Ok(self.space.contains(&v))
    }
}

/// (F_i A)^n in the requested presentation.
pub fn filtration_basis(
    alg: &SteenrodAlgebra,
    i: i64,
    n: u32,
    kind: BasisKind,
) -> Result<GradedSubspace> {
    let p = alg.p();
    let basis = alg.basis(n)?;
    let elements: Vec<Element> = match kind {
        BasisKind::Admissible => admissible_words(p, n)
            .iter()
            .filter(|w| w.excess(p) >= i)
            .map(|w| word_to_milnor(alg, w))
            .collect::<Result<_>>()?,
        BasisKind::Milnor => basis
            .monomials
            .iter()
            .filter(|m| m.weight(p) as i64 >= i)
            .map(|m| alg.monomial(m.clone()))
            .collect(),
    };
    let vectors = elements
        .iter()
        .map(|a| alg.to_vector(a, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(GradedSubspace {
        degree: n,
        level: i,
        kind,
        space: Subspace::span(p, basis.dim(), vectors),
        elements,
    })
}

/// Whether two subspaces of the same degree have the same span.
pub fn subspace_equal(a: &GradedSubspace, b: &GradedSubspace) -> Result<bool> {
    if a.degree != b.degree {
        return Err(Error::DegreeMismatch {
            left: a.degree,
            right: b.degree,
        });
    }
    Ok(a.space.equals(&b.space))
}

/// dim (F_i A)^n counted from admissible words; valid because those words
/// form a basis.
pub fn filtration_dim_by_words(p: u32, i: i64, n: u32) -> usize {
    admissible_words(p, n).iter().filter(|w| w.excess(p) >= i).count()
}

/// E_i^j = (F_i)^j / (F_{i+1})^j, represented by the monomials of weight i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EQuotient {
    pub level: i64,
    pub degree: u32,
    pub representatives: Vec<MilnorMonomial>,
}

impl EQuotient {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    /// Coordinates of the class of `a`, an element of F_level of this degree.
    pub fn class_vector(&self, p: u32, a: &Element) -> Vec<u32> {
        debug_assert!(in_level(p, a, self.level));
        self.representatives.iter().map(|m| a.coeff(m)).collect()
    }

    pub fn from_vector(&self, p: u32, v: &[u32]) -> Element {
        Element::from_terms(
            p,
            self.representatives
                .iter()
                .zip(v)
                .filter(|(_, &c)| c != 0)
                .map(|(m, &c)| (m.clone(), c)),
        )
    }
}

pub fn e_quotient(alg: &SteenrodAlgebra, i: i64, j: u32) -> Result<EQuotient> {
    let p = alg.p();
    let basis = alg.basis(j)?;
    Ok(EQuotient {
        level: i,
        degree: j,
        representatives: basis
            .monomials
            .iter()
            .filter(|m| m.weight(p) as i64 == i)
            .cloned()
            .collect(),
    })
}

/// Every term has weight at least i, i.e. `a` lies in F_i.
pub fn in_level(p: u32, a: &Element, i: i64) -> bool {
    a.keys().all(|m| m.weight(p) as i64 >= i)
}

/// The largest i with `a` in F_i; `None` for zero.
pub fn level_of(p: u32, a: &Element) -> Option<u32> {
    a.keys().map(|m| m.weight(p)).min()
}

/// The projection A -> A/F_i on complement representatives: the terms of weight below i.
pub fn project_below(p: u32, a: &Element, i: i64) -> Element {
    a.filter(|m| (m.weight(p) as i64) < i)
}

/// The terms of weight exactly w.
pub fn weight_part(p: u32, a: &Element, w: i64) -> Element {
    a.filter(|m| m.weight(p) as i64 == w)
}

/// Monomials of degree n and weight below i: the basis of (A/F_i)^n.
pub fn quotient_basis(alg: &SteenrodAlgebra, i: i64, n: u32) -> Result<Vec<MilnorMonomial>> {
    let p = alg.p();
    Ok(alg
        .basis(n)?
        .monomials
        .iter()
        .filter(|m| (m.weight(p) as i64) < i)
        .cloned()
        .collect())
}

/// The generator b^e P^i of E_{2i+e}^{2i(p-1)+e} as a Milnor monomial
/// (Sq(level) at p = 2).
pub fn top_generator(p: u32, level: u32) -> MilnorMonomial {
    if p == 2 {
        MilnorMonomial::p_power(level)
    } else {
        let e = (level % 2) as u8;
        MilnorMonomial::new(BSeq::new(vec![e]), Seq::new(vec![level / 2]))
    }
}

/// The word b^e P^i (Sq^level at p = 2) naming the same generator.
pub fn top_word(p: u32, level: u32) -> Word {
    if p == 2 {
        Word::even(vec![level])
    } else {
        Word::odd(vec![(level % 2) as u8, 0], vec![level / 2])
    }
}

/// 2i(p-1) + e for level 2i + e; the lowest degree in which F_level is nonzero.
pub fn top_degree(p: u32, level: u32) -> u32 {
    if p == 2 {
        level
    } else {
        (level / 2) * 2 * (p - 1) + level % 2
    }
}

/// The product map E_L^{top} ⊗ (A/F_{L-j+1})^j -> E_{L-j}^{top+j}, x ⊗ y -> x·y,
/// on the generator of the one-dimensional left factor.
#[derive(Debug, Clone)]
pub struct MuTilde {
    pub level: u32,
    pub shift: u32,
    /// Basis of (A/F_{L-j+1})^j; columns of `matrix`.
    pub source: Vec<MilnorMonomial>,
    /// E_{L-j}^{top+j}; rows of `matrix`.
    pub target: EQuotient,
    pub matrix: Matrix,
    inverse: Option<Matrix>,
}

impl MuTilde {
    pub fn is_invertible(&self) -> bool {
        self.inverse.is_some()
    }

    pub fn inverse(&self) -> Option<&Matrix> {
        self.inverse.as_ref()
    }

    /// Preimage of a class in the target, as an element of (A/F_{L-j+1})^j.
    pub fn solve(&self, p: u32, class: &[u32]) -> Result<Element> {
        let inv = self
            .inverse
            .as_ref()
            .ok_or_else(|| Error::NotInvertible(format!("mu_tilde({}, {})", self.level, self.shift)))?;
        let x = inv.mul_vec(class);
        Ok(Element::from_terms(
            p,
            self.source
                .iter()
                .zip(x)
                .filter(|(_, c)| *c != 0)
                .map(|(m, c)| (m.clone(), c)),
        ))
    }
}

/// Builds the matrix of the product map; does not require it to be invertible.
pub fn mu_tilde_matrix(alg: &SteenrodAlgebra, level: u32, shift: u32) -> Result<MuTilde> {
    let p = alg.p();
    let top = top_degree(p, level);
    alg.ctx().check_degree(top + shift)?;
    let low = level as i64 - shift as i64;
    let source = quotient_basis(alg, low + 1, shift)?;
    let target = e_quotient(alg, low, top + shift)?;
    let g = alg.monomial(top_generator(p, level));
    let mut columns = Vec::with_capacity(source.len());
    for y in &source {
        let xy = alg.multiply(&g, &alg.monomial(y.clone()))?;
        if !in_level(p, &xy, low) {
            return Err(Error::Invalid(format!(
                "{} * {y} leaves F_{low}",
                top_generator(p, level)
            )));
        }
        columns.push(target.class_vector(p, &xy));
    }
    let matrix = Matrix::from_columns(p, target.dim(), &columns);
    let inverse = if matrix.is_square() { matrix.inverse().ok() } else { None };
    Ok(MuTilde {
        level,
        shift,
        source,
        target,
        matrix,
        inverse,
    })
}

/// The product isomorphism; errors if the matrix is not square or singular.
pub fn mu_tilde(alg: &SteenrodAlgebra, level: u32, shift: u32) -> Result<MuTilde> {
    let mt = mu_tilde_matrix(alg, level, shift)?;
    if !mt.matrix.is_square() {
        return Err(Error::Invalid(format!(
            "mu_tilde({level}, {shift}) is {}x{}",
            mt.matrix.rows(),
            mt.matrix.cols()
        )));
    }
    if !mt.is_invertible() {
        return Err(Error::NotInvertible(format!("mu_tilde({level}, {shift})")));
    }
    Ok(mt)
}

/// Index data for gamma_{i,j,e}: it sends A^{theta_degree} ⊗ E_{source}^{top}
/// to E_{target}^{top} ⊗ (A/F_{source+1})^{shift}, with source = 2i - j + e
/// and target = 2i + e.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GammaIndex {
    pub source_level: u32,
    pub target_level: u32,
    pub shift: u32,
    pub theta_degree: u32,
}

impl GammaIndex {
    /// gamma_{i,j,e}; requires 2i + e >= j.
    pub fn new(p: u32, i: u32, j: u32, eps: u32) -> Result<Self> {
        let target = 2 * i + eps;
        if eps > 1 || j > target {
            return Err(Error::IndexOutOfRange(format!("gamma_{{{i},{j},{eps}}}")));
        }
        Ok(Self::from_levels(p, target - j, j))
    }

    fn from_levels(p: u32, source: u32, shift: u32) -> Self {
        let target = source + shift;
        let eps = (target % 2) as i64;
        let kappa = (source % 2) as i64;
        let d = p as i64 * shift as i64 - (p as i64 - 2) * (eps - kappa);
        GammaIndex {
            source_level: source,
            target_level: target,
            shift,
            theta_degree: d as u32,
        }
    }

    /// The gamma acting on A^{theta_degree} ⊗ E_{source}, if any.
    pub fn for_operation(p: u32, source_level: u32, theta_degree: u32) -> Option<Self> {
        (0..=theta_degree)
            .map(|j| Self::from_levels(p, source_level, j))
            .find(|g| g.theta_degree == theta_degree)
    }
}

/// gamma(theta ⊗ g_source) = g_target ⊗ phi; returns phi as an element of
/// (A/F_{source+1})^{shift} on complement representatives.
pub fn gamma(alg: &SteenrodAlgebra, idx: &GammaIndex, theta: &Element) -> Result<Element> {
    let mt = mu_tilde(alg, idx.target_level, idx.shift)?;
    gamma_with(alg, &mt, idx, theta)
}

/// As [`gamma`], reusing a prepared product isomorphism.
pub fn gamma_with(
    alg: &SteenrodAlgebra,
    mt: &MuTilde,
    idx: &GammaIndex,
    theta: &Element,
) -> Result<Element> {
    let p = alg.p();
    if mt.level != idx.target_level || mt.shift != idx.shift {
        return Err(Error::IndexOutOfRange(format!(
            "mu_tilde({}, {}) does not match gamma target {} shift {}",
            mt.level, mt.shift, idx.target_level, idx.shift
        )));
    }
    if let Some(d) = theta.require_homogeneous()? {
        if d != idx.theta_degree {
            return Err(Error::BadDegree {
                degree: d,
                expected: idx.theta_degree.to_string(),
            });
        }
    }
    let g = alg.monomial(top_generator(p, idx.source_level));
    let x = alg.multiply(theta, &g)?;
    let source = idx.source_level as i64;
    if !in_level(p, &x, source) {
        return Err(Error::Invalid(format!("theta * g_{source} leaves F_{source}")));
    }
    mt.solve(p, &mt.target.class_vector(p, &x))
}

/// ceil(k/p) for possibly negative k.
pub fn ceil_div(k: i64, p: u32) -> i64 {
    k.div_euclid(p as i64) + i64::from(k.rem_euclid(p as i64) != 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(p: u32) -> SteenrodAlgebra {
        SteenrodAlgebra::with_prime(p).unwrap()
    }

    #[test]
    fn degree_four_mod_two() {
        let a = alg(2);
        let adm = filtration_basis(&a, 2, 4, BasisKind::Admissible).unwrap();
        let mil = filtration_basis(&a, 2, 4, BasisKind::Milnor).unwrap();
        assert_eq!(adm.dim(), 2);
        assert!(subspace_equal(&adm, &mil).unwrap());
        let all = filtration_basis(&a, 0, 4, BasisKind::Milnor).unwrap();
        assert_eq!(all.dim(), all.ambient_dim());
        let other = filtration_basis(&a, 0, 3, BasisKind::Milnor).unwrap();
        assert!(subspace_equal(&all, &other).is_err());
    }

    #[test]
    fn top_quotient_mod_three() {
        let a = alg(3);
        let e = e_quotient(&a, 5, 9).unwrap();
        assert_eq!(e.representatives, vec![top_generator(3, 5)]);
        assert_eq!(e_quotient(&a, 0, 0).unwrap().dim(), 1);
        assert_eq!(e_quotient(&a, 1, 2).unwrap().dim(), 0);
    }

    #[test]
    fn small_mu_tilde() {
        let a = alg(2);
        let m = mu_tilde(&a, 4, 1).unwrap();
        assert_eq!(m.source, vec![MilnorMonomial::p_power(1)]);
        assert!(mu_tilde(&a, 3, 0).unwrap().matrix.is_identity());
        assert!(mu_tilde(&alg(3), 2, 1).is_ok());
    }

    #[test]
    fn gamma_example_mod_two() {
        let a = alg(2);
        let idx = GammaIndex::new(2, 1, 1, 0).unwrap();
        assert_eq!((idx.source_level, idx.target_level, idx.theta_degree), (1, 2, 2));
        let phi = gamma(&a, &idx, &a.p_power(2)).unwrap();
        assert_eq!(phi, a.p_power(1));
        let id = GammaIndex::new(2, 3, 0, 1).unwrap();
        assert_eq!(gamma(&a, &id, &a.unit()).unwrap(), a.unit());
        assert!(GammaIndex::new(2, 0, 1, 0).is_err());
    }

    #[test]
    fn gamma_index_lookup() {
        for p in [2u32, 3, 5] {
            for i in 0..5 {
                for j in 0..=2 * i {
                    for e in 0..2 {
                        let g = GammaIndex::new(p, i, j, e).unwrap();
                        assert_eq!(GammaIndex::for_operation(p, g.source_level, g.theta_degree), Some(g));
                    }
                }
            }
        }
    }

    #[test]
    fn ceilings() {
        assert_eq!(ceil_div(5, 3), 2);
        assert_eq!(ceil_div(6, 3), 2);
        assert_eq!(ceil_div(0, 3), 0);
        assert_eq!(ceil_div(-1, 2), 0);
    }
}
