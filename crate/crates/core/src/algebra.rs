//! A handle on the Steenrod algebra at a fixed prime, holding the caches that
//! the degreewise computations share.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, RwLock};

use crate::combination::Combination;
use crate::enumerate::milnor_indices;
use crate::error::Result;
use crate::field::PrimeContext;
use crate::milnor::{self, Element, TensorElement};
use crate::monomial::MilnorMonomial;

/// Milnor basis of one degree together with a reverse index.
#[derive(Debug)]
pub struct DegreeBasis {
    pub degree: u32,
    pub monomials: Vec<MilnorMonomial>,
    index: HashMap<MilnorMonomial, usize>,
}

impl DegreeBasis {
    fn new(degree: u32, monomials: Vec<MilnorMonomial>) -> Self {
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        DegreeBasis {
            degree,
            monomials,
            index,
        }
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn position(&self, m: &MilnorMonomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

pub struct SteenrodAlgebra {
    ctx: PrimeContext,
    bases: RwLock<HashMap<u32, Arc<DegreeBasis>>>,
    products: RwLock<HashMap<(MilnorMonomial, MilnorMonomial), Element>>,
    pub(crate) change_of_basis: RwLock<HashMap<u32, Arc<crate::admissible::ChangeOfBasis>>>,
    cache_dir: Option<PathBuf>,
}

impl std::fmt::Debug for SteenrodAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SteenrodAlgebra")
            .field("ctx", &self.ctx)
            .field("cache_dir", &self.cache_dir)
            .finish()
    }
}

impl SteenrodAlgebra {
    pub fn new(ctx: PrimeContext) -> Self {
        SteenrodAlgebra {
            ctx,
            bases: RwLock::new(HashMap::new()),
            products: RwLock::new(HashMap::new()),
            change_of_basis: RwLock::new(HashMap::new()),
            cache_dir: None,
        }
    }

    /// Convenience constructor with the default degree cap.
    pub fn with_prime(p: u32) -> Result<Self> {
        Ok(Self::new(PrimeContext::with_default_cap(p)?))
    }

    /// Persist change-of-basis matrices under `dir`.
    pub fn with_cache_dir(mut self, dir: impl Into<PathBuf>) -> Self {
        self.cache_dir = Some(dir.into());
        self
    }

    pub fn cache_dir(&self) -> Option<&PathBuf> {
        self.cache_dir.as_ref()
    }

    pub fn ctx(&self) -> &PrimeContext {
        &self.ctx
    }

    pub fn p(&self) -> u32 {
        self.ctx.p()
    }

    pub fn is_odd(&self) -> bool {
        self.ctx.is_odd()
    }

    /// Milnor basis in degree `n`, in canonical order.
    pub fn basis(&self, n: u32) -> Result<Arc<DegreeBasis>> {
        self.ctx.check_degree(n)?;
        if let Some(b) = self.bases.read().unwrap().get(&n) {
            return Ok(b.clone());
        }
        let b = Arc::new(DegreeBasis::new(n, milnor_indices(self.p(), n)));
        self.bases.write().unwrap().insert(n, b.clone());
        Ok(b)
    }

    pub fn dim(&self, n: u32) -> Result<usize> {
        Ok(self.basis(n)?.dim())
    }

    /// Coordinates of a homogeneous element of degree `n` in the Milnor basis.
    pub fn to_vector(&self, a: &Element, n: u32) -> Result<Vec<u32>> {
        let basis = self.basis(n)?;
        let mut v = vec![0; basis.dim()];
        for (m, c) in a.iter() {
            match basis.position(m) {
                Some(i) => v[i] = c,
                None => {
                    return Err(crate::error::Error::DegreeMismatch {
                        left: m.degree(self.p()),
                        right: n,
                    })
                }
            }
        }
        Ok(v)
    }

    pub fn from_vector(&self, v: &[u32], n: u32) -> Result<Element> {
        let basis = self.basis(n)?;
        Ok(Element::from_terms(
            self.p(),
            basis
                .monomials
                .iter()
                .zip(v)
                .filter(|(_, &c)| c != 0)
                .map(|(m, &c)| (m.clone(), c)),
        ))
    }

    pub fn unit(&self) -> Element {
        Element::monomial(self.p(), MilnorMonomial::unit())
    }

    pub fn monomial(&self, m: MilnorMonomial) -> Element {
        Element::monomial(self.p(), m)
    }

    /// Cached product of two basis monomials (no cap check).
    pub fn multiply_monomials(&self, a: &MilnorMonomial, b: &MilnorMonomial) -> Element {
        if a.is_unit() {
            return self.monomial(b.clone());
        }
        if b.is_unit() {
            return self.monomial(a.clone());
        }
        let key = (a.clone(), b.clone());
        if let Some(r) = self.products.read().unwrap().get(&key) {
            return r.clone();
        }
        let r = milnor::product_monomials(self.p(), a, b);
        self.products.write().unwrap().insert(key, r.clone());
        r
    }

    /// Product of two elements; refuses results above the degree cap.
    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element> {
        if !a.is_zero() && !b.is_zero() {
            self.ctx.check_degree(a.max_degree() + b.max_degree())?;
        }
        Ok(a.bilinear(b, |x, y| self.multiply_monomials(x, y)))
    }

    pub fn coproduct(&self, a: &Element) -> Result<TensorElement> {
        a.check_cap(&self.ctx)?;
        Ok(milnor::coproduct_raw(a))
    }

    /// Product in the graded tensor square of the algebra.
    pub fn tensor_multiply(&self, x: &TensorElement, y: &TensorElement) -> TensorElement {
        milnor::tensor_product(self.p(), x, y, |a, b| self.multiply_monomials(a, b))
    }

    pub fn pth_root(&self, a: &Element) -> Result<Element> {
        milnor::pth_root(&self.ctx, a)
    }

    /// Minimum weight over the terms of a nonzero element.
    pub fn min_weight(&self, a: &Element) -> Option<u32> {
        a.keys().map(|m| m.weight(self.p())).min()
    }

    /// P^i (Sq^i at p = 2).
    pub fn p_power(&self, i: u32) -> Element {
        self.monomial(MilnorMonomial::p_power(i))
    }

    /// The Bockstein Q_0.
    pub fn bockstein(&self) -> Element {
        self.monomial(MilnorMonomial::q(0))
    }

    /// Generic helper for tensor elements keyed by pairs.
    pub fn tensor_zero(&self) -> TensorElement {
        Combination::zero(self.p())
    }
}
