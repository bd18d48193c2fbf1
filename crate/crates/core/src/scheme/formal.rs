//! Strict additive power series f(X) = sum (a_i + b_i eps) X^{p^i} over
//! R[eps]/(eps^2), deg X = -2, deg eps = -1, and the map theta sending an
//! algebra map phi: A_* -> R to sum (phi(xi_i) + phi(tau_i) eps) X^{p^i}.
//!
//! At p = 2 only the eps-free part is used: f(X) = sum phi(zeta_i) X^{2^i}.

use rand::Rng;

use super::ring::{GradedTestRing, RingElement, RingGenerator, RingMonomial};
use crate::algebra::SteenrodAlgebra;
use crate::dual::{coproduct_by_pairing, DualElement, DualTensor};
use crate::error::{Error, Result};
use crate::monomial::DualMonomial;
use crate::report::Report;

/// How convolution of algebra maps corresponds to composition of series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvolutionOrder {
    /// theta(phi * psi) = theta(phi) ∘ theta(psi)
    Forward,
    /// theta(phi * psi) = theta(psi) ∘ theta(phi)
    Reversed,
}

/// Determined by `check_theta` on seeded samples; see the scheme tests.
pub const CONVOLUTION_ORDER: ConvolutionOrder = ConvolutionOrder::Reversed;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsFormalSeries {
    p: u32,
    a: Vec<RingElement>,
    b: Vec<RingElement>,
}

fn expect_degree(ring: &GradedTestRing, v: &RingElement, d: i64, what: &str) -> Result<()> {
    match ring.degree_of(v) {
        Some(e) if e != d => Err(Error::DegreeConstraint(format!("{what} has degree {e}, expected {d}"))),
        None if !v.is_zero() => Err(Error::DegreeConstraint(format!("{what} is not homogeneous"))),
        _ => Ok(()),
    }
}

impl EpsFormalSeries {
    /// Coefficients a_0..a_N and b_0..b_N; the series is truncated above X^{p^N}.
    /// a_i has degree 2p^i - 2 (2^i - 1 at p = 2) and b_i degree 2p^i - 1.
    pub fn new(ring: &GradedTestRing, a: Vec<RingElement>, b: Vec<RingElement>) -> Result<Self> {
        let p = ring.p();
        if a.is_empty() || a.len() != b.len() {
            return Err(Error::Invalid("need equally many a_i and b_i, at least one".into()));
        }
        if a[0] != ring.one() {
            return Err(Error::NonStrict);
        }
        for (i, (x, y)) in a.iter().zip(&b).enumerate() {
            let q = (p as i64).pow(i as u32);
            let even = if p == 2 { q - 1 } else { 2 * q - 2 };
            expect_degree(ring, x, even, &format!("a_{i}"))?;
            expect_degree(ring, y, 2 * q - 1, &format!("b_{i}"))?;
            if p == 2 && !y.is_zero() {
                return Err(Error::Invalid("no eps part at p = 2".into()));
            }
        }
        Ok(EpsFormalSeries { p, a, b })
    }

    /// The series X.
    pub fn identity(ring: &GradedTestRing, order: usize) -> Self {
        let mut a = vec![ring.zero(); order + 1];
        a[0] = ring.one();
        EpsFormalSeries {
            p: ring.p(),
            a,
            b: vec![ring.zero(); order + 1],
        }
    }

    /// N, where the series is truncated above X^{p^N}.
    pub fn order(&self) -> usize {
        self.a.len() - 1
    }

    pub fn a(&self, i: usize) -> &RingElement {
        &self.a[i]
    }

    pub fn b(&self, i: usize) -> &RingElement {
        &self.b[i]
    }

    /// self ∘ inner, expanded with the freshman's dream:
    /// (c + d eps)^{p^i} = c^{p^i} for i >= 1 since eps^2 = 0 and p = 0.
    pub fn compose(&self, inner: &EpsFormalSeries, ring: &GradedTestRing) -> Result<Self> {
        if self.order() != inner.order() {
            return Err(Error::Invalid("series truncated at different orders".into()));
        }
        let p = ring.p();
        let n = self.order();
        let mut a = vec![ring.zero(); n + 1];
        let mut b = vec![ring.zero(); n + 1];
        for k in 0..=n {
            for i in 0..=k {
                let j = k - i;
                let cj = ring.pow(&inner.a[j], (p as u64).pow(i as u32));
                a[k].add_scaled(&ring.multiply(&self.a[i], &cj), 1);
                if i >= 1 {
                    b[k].add_scaled(&ring.multiply(&self.b[i], &cj), 1);
                }
            }
            b[k].add_scaled(&ring.multiply(&self.a[0], &inner.b[k]), 1);
            b[k].add_scaled(&ring.multiply(&self.b[0], &inner.a[k]), 1);
        }
        Ok(EpsFormalSeries { p, a, b })
    }

    /// self ∘ inner by substituting into the full truncated polynomial and
    /// multiplying out in R[eps]; fails if a coefficient off the p-powers survives.
    pub fn compose_expanded(&self, inner: &EpsFormalSeries, ring: &GradedTestRing) -> Result<Self> {
        let p = ring.p();
        let n = self.order();
        let top = (p as usize).pow(n as u32);
        let with_eps = eps_ring(ring)?;
        let lift = |x: &RingElement| x.map_keys(extend);
        let eps = with_eps.generator(ring.generator_count());
        let coeff = |s: &EpsFormalSeries, i: usize| -> RingElement {
            lift(&s.a[i]).plus(&with_eps.multiply(&lift(&s.b[i]), &eps))
        };
        let mut g = vec![with_eps.zero(); top + 1];
        for j in 0..=n {
            g[(p as usize).pow(j as u32)] = coeff(inner, j);
        }
        let mul = |x: &[RingElement], y: &[RingElement]| -> Vec<RingElement> {
            let mut out = vec![with_eps.zero(); top + 1];
            for (d1, u) in x.iter().enumerate().filter(|(_, u)| !u.is_zero()) {
                for (d2, v) in y.iter().enumerate().take(top + 1 - d1) {
                    if !v.is_zero() {
                        out[d1 + d2].add_scaled(&with_eps.multiply(u, v), 1);
                    }
                }
            }
            out
        };
        let mut result = vec![with_eps.zero(); top + 1];
        let mut power = g.clone();
        let mut done = 1usize;
        for i in 0..=n {
            let target = (p as usize).pow(i as u32);
            while done < target {
                power = mul(&power, &g);
                done += 1;
            }
            let c = coeff(self, i);
            for (d, v) in power.iter().enumerate() {
                result[d].add_scaled(&with_eps.multiply(&c, v), 1);
            }
        }
        let k = ring.generator_count();
        let mut a = vec![ring.zero(); n + 1];
        let mut b = vec![ring.zero(); n + 1];
        for (d, v) in result.iter().enumerate() {
            let slot = (0..=n).find(|&i| (p as usize).pow(i as u32) == d);
            for (m, c) in v.iter() {
                let Some(i) = slot else {
                    return Err(Error::Invalid(format!("composite has a term in X^{d}")));
                };
                let base = RingMonomial(m.0[..k].to_vec());
                if m.0[k] == 0 {
                    a[i].add_term(base, c);
                } else {
                    b[i].add_term(base, c);
                }
            }
        }
        Ok(EpsFormalSeries { p, a, b })
    }

    /// The compositional inverse, solved degree by degree.
    pub fn inverse(&self, ring: &GradedTestRing) -> Result<Self> {
        let p = ring.p();
        let n = self.order();
        let mut c = vec![ring.zero(); n + 1];
        let mut d = vec![ring.zero(); n + 1];
        c[0] = ring.one();
        for k in 0..=n {
            let mut ck = ring.zero();
            let mut dk = ring.zero();
            for i in 1..=k {
                let cj = ring.pow(&c[k - i], (p as u64).pow(i as u32));
                ck.add_scaled(&ring.multiply(&self.a[i], &cj), p - 1);
                dk.add_scaled(&ring.multiply(&self.b[i], &cj), p - 1);
            }
            if k > 0 {
                c[k] = ck;
            }
            dk.add_scaled(&ring.multiply(&self.b[0], &c[k]), p - 1);
            d[k] = dk;
        }
        Ok(EpsFormalSeries { p, a: c, b: d })
    }

    pub fn format(&self, ring: &GradedTestRing) -> String {
        (0..=self.order())
            .map(|i| format!("({} + ({}) eps) X^{}", ring.format(&self.a[i]), ring.format(&self.b[i]), self.p.pow(i as u32)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn eps_ring(ring: &GradedTestRing) -> Result<GradedTestRing> {
    ring.with_generator(RingGenerator {
        name: "eps".into(),
        degree: -1,
        parity: Some(1),
        truncation: Some(2),
    })
}

fn extend(m: &RingMonomial) -> RingMonomial {
    let mut v = m.0.clone();
    v.push(0);
    RingMonomial(v)
}

/// An algebra map A_* -> R given by its values on tau_0..tau_N and xi_1..xi_N.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualAlgebraMap {
    pub tau: Vec<RingElement>,
    pub xi: Vec<RingElement>,
}

impl DualAlgebraMap {
    pub fn order(&self) -> usize {
        self.xi.len()
    }

    pub fn random(ring: &GradedTestRing, order: usize, rng: &mut impl Rng) -> Self {
        let p = ring.p();
        let mut pick = |d: i64| {
            RingElement::from_terms(p, ring.basis(d).iter().map(|m| (m.clone(), rng.gen_range(0..p))))
        };
        let tau = if p == 2 {
            vec![]
        } else {
            (0..=order).map(|i| pick(2 * (p as i64).pow(i as u32) - 1)).collect()
        };
        let xi = (1..=order)
            .map(|i| {
                let q = (p as i64).pow(i as u32);
                pick(if p == 2 { q - 1 } else { 2 * q - 2 })
            })
            .collect();
        DualAlgebraMap { tau, xi }
    }

    pub fn eval_monomial(&self, ring: &GradedTestRing, m: &DualMonomial) -> Result<RingElement> {
        let mut out = ring.one();
        for k in m.e.indices() {
            let v = self.tau.get(k).ok_or_else(|| Error::IndexOutOfRange(format!("tau_{k}")))?;
            out = ring.multiply(&out, v);
        }
        for (t, &r) in m.r.entries().iter().enumerate() {
            let v = self.xi.get(t).ok_or_else(|| Error::IndexOutOfRange(format!("xi_{}", t + 1)))?;
            out = ring.multiply(&out, &ring.pow(v, r as u64));
        }
        Ok(out)
    }

    fn eval_tensor(&self, other: &DualAlgebraMap, ring: &GradedTestRing, t: &DualTensor) -> Result<RingElement> {
        let mut out = ring.zero();
        for ((u, v), c) in t.iter() {
            out.add_scaled(&ring.multiply(&self.eval_monomial(ring, u)?, &other.eval_monomial(ring, v)?), c);
        }
        Ok(out)
    }
}

/// Coproducts of the generators up to the given order, read off from the
/// Milnor product through the pairing.
pub struct GeneratorCoproducts {
    tau: Vec<DualTensor>,
    xi: Vec<DualTensor>,
}

impl GeneratorCoproducts {
    pub fn new(alg: &SteenrodAlgebra, order: usize) -> Result<Self> {
        let p = alg.p();
        let tau = if p == 2 {
            vec![]
        } else {
            (0..=order)
                .map(|k| coproduct_by_pairing(alg, &DualElement::monomial(p, DualMonomial::tau(k))))
                .collect::<Result<_>>()?
        };
        let xi = (1..=order)
            .map(|k| coproduct_by_pairing(alg, &DualElement::monomial(p, DualMonomial::xi(k))))
            .collect::<Result<_>>()?;
        Ok(GeneratorCoproducts { tau, xi })
    }

    /// phi * psi on the generators.
    pub fn convolve(&self, phi: &DualAlgebraMap, psi: &DualAlgebraMap, ring: &GradedTestRing) -> Result<DualAlgebraMap> {
        Ok(DualAlgebraMap {
            tau: self.tau.iter().map(|t| phi.eval_tensor(psi, ring, t)).collect::<Result<_>>()?,
            xi: self.xi.iter().map(|t| phi.eval_tensor(psi, ring, t)).collect::<Result<_>>()?,
        })
    }
}

/// theta(phi) = sum (phi(xi_i) + phi(tau_i) eps) X^{p^i}.
pub fn theta(ring: &GradedTestRing, phi: &DualAlgebraMap) -> Result<EpsFormalSeries> {
    let mut a = vec![ring.one()];
    a.extend(phi.xi.iter().cloned());
    let b = if ring.p() == 2 {
        vec![ring.zero(); a.len()]
    } else {
        phi.tau.clone()
    };
    EpsFormalSeries::new(ring, a, b)
}

/// For seeded random pairs, compares theta(phi * psi) with both composites.
/// A record passes when the order fixed in `CONVOLUTION_ORDER` holds; the
/// indices note which orders held.
pub fn check_theta(
    alg: &SteenrodAlgebra,
    ring: &GradedTestRing,
    order: usize,
    pairs: usize,
    rng: &mut impl Rng,
) -> Result<Report> {
    let p = alg.p();
    let cop = GeneratorCoproducts::new(alg, order)?;
    let mut rep = Report::new();
    for k in 0..pairs {
        let phi = DualAlgebraMap::random(ring, order, rng);
        let psi = DualAlgebraMap::random(ring, order, rng);
        let conv = theta(ring, &cop.convolve(&phi, &psi, ring)?)?;
        let (f, g) = (theta(ring, &phi)?, theta(ring, &psi)?);
        let forward = conv == f.compose(&g, ring)?;
        let reversed = conv == g.compose(&f, ring)?;
        let ok = match CONVOLUTION_ORDER {
            ConvolutionOrder::Forward => forward,
            ConvolutionOrder::Reversed => reversed,
        };
        let idx = [("pair", k as i64), ("forward", forward as i64), ("reversed", reversed as i64)];
        rep.check("theta-appendix", p, &idx, ok, || {
            format!("theta(phi * psi) = {}", conv.format(ring))
        });
    }
    Ok(rep)
}
