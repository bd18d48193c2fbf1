//! Checks on A_(p)*: Hopf axioms, rho as a Hopf map onto the dual Steenrod
//! algebra, the induced filtration, U_n and theta_n, the comodules V_n*, and
//! theta on the dual algebra.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::comodule::check_comodule;
use super::formal::check_theta;
use super::ring::GradedTestRing;
use super::unipotent::{all_maps, theta_n, AlgebraMap, UnipotentMatrix};
use super::*;
use crate::algebra::SteenrodAlgebra;
use crate::combination::Combination;
use crate::dual::{dual_coproduct, dual_product, dual_to_vector, DualFiltration, DualKind, DualTensor};
use crate::error::Error;
use crate::filtration::top_degree;
use crate::filtration::verify::Ranges;
use crate::linalg::{Matrix, Subspace};
use crate::report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SchemeFamily {
    /// Coassociativity, counit and antipode on monomials.
    Hopf,
    /// rho is multiplicative, comultiplicative and onto, with the stated kernel.
    RhoHopf,
    /// rho(F_i A_(p)*) = F_i of the dual Steenrod algebra.
    RhoFilt,
    /// (E1*)-(E6*) for the monomial filtration of A_(p)*.
    InducedFilt,
    /// Bases of the top quotients of the dual of A_(p)*.
    InducedFilt2,
    ThetaN,
    Comodule,
    ThetaAppendix,
}

impl SchemeFamily {
    pub const ALL: [SchemeFamily; 8] = [
        SchemeFamily::Hopf,
        SchemeFamily::RhoHopf,
        SchemeFamily::RhoFilt,
        SchemeFamily::InducedFilt,
        SchemeFamily::InducedFilt2,
        SchemeFamily::ThetaN,
        SchemeFamily::Comodule,
        SchemeFamily::ThetaAppendix,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SchemeFamily::Hopf => "hopf",
            SchemeFamily::RhoHopf => "rho-hopf",
            SchemeFamily::RhoFilt => "rho-filt",
            SchemeFamily::InducedFilt => "induced-filt",
            SchemeFamily::InducedFilt2 => "induced-filt2",
            SchemeFamily::ThetaN => "theta-n",
            SchemeFamily::Comodule => "comodule",
            SchemeFamily::ThetaAppendix => "theta-appendix",
        }
    }
}

impl fmt::Display for SchemeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SchemeFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SchemeFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown scheme family {s:?}")))
    }
}

/// Runs one family. `max_degree` bounds monomial degrees, `levels` the
/// filtration index (its upper end bounds s for induced-filt2), and
/// `samples`/`seed` drive the random pairs of theta-n and theta-appendix.
pub fn verify_scheme(alg: &SteenrodAlgebra, family: SchemeFamily, r: &Ranges) -> Result<Report> {
    alg.ctx().check_degree(r.max_degree)?;
    match family {
        SchemeFamily::Hopf => hopf(alg.p(), r.max_degree),
        SchemeFamily::RhoHopf => rho_hopf(alg, r.max_degree),
        SchemeFamily::RhoFilt => rho_filt(alg, r),
        SchemeFamily::InducedFilt => induced_filt(alg.p(), r),
        SchemeFamily::InducedFilt2 => induced_filt2(alg.p(), (*r.levels.end()).max(0) as u32),
        SchemeFamily::ThetaN => theta_family(alg.p(), r.samples, r.seed),
        SchemeFamily::Comodule => {
            let mut rep = Report::new();
            // x_n1 has the largest degree in A(n)
            let cap = alg.ctx().degree_cap();
            for n in (1..=5).take_while(|&n| n < 2 || Gen::new(n, 1).degree(alg.p()) <= cap) {
                rep.extend(check_comodule(alg.ctx(), n)?);
            }
            Ok(rep)
        }
        SchemeFamily::ThetaAppendix => {
            let ring = appendix_ring(alg.p())?;
            let mut rng = ChaCha8Rng::seed_from_u64(r.seed);
            check_theta(alg, &ring, 3, r.samples, &mut rng)
        }
    }
}

type Triple = Combination<(UPolyMonomial, UPolyMonomial, UPolyMonomial)>;

fn hopf(p: u32, max_degree: u32) -> Result<Report> {
    let mut rep = Report::new();
    for n in 0..=max_degree {
        let mut bad: [Option<String>; 3] = [None, None, None];
        for m in monomials(p, n) {
            let cop = coproduct_monomial(p, &m);
            let (mut left, mut right) = (Triple::zero(p), Triple::zero(p));
            for ((a, b), c) in cop.iter() {
                for ((a1, a2), d) in coproduct_monomial(p, a).iter() {
                    left.add_term((a1.clone(), a2.clone(), b.clone()), c * d % p);
                }
                for ((b1, b2), d) in coproduct_monomial(p, b).iter() {
                    right.add_term((a.clone(), b1.clone(), b2.clone()), c * d % p);
                }
            }
            if bad[0].is_none() && left != right {
                bad[0] = Some(format!("coassociativity fails on {m}"));
            }

            let me = UElement::monomial(p, m.clone());
            let (mut lu, mut ru) = (UElement::zero(p), UElement::zero(p));
            for ((a, b), c) in cop.iter() {
                if a.is_unit() {
                    lu.add_term(b.clone(), c);
                }
                if b.is_unit() {
                    ru.add_term(a.clone(), c);
                }
            }
            if bad[1].is_none() && (lu != me || ru != me) {
                bad[1] = Some(format!("counit fails on {m}"));
            }

            let (mut ls, mut rs) = (UElement::zero(p), UElement::zero(p));
            for ((a, b), c) in cop.iter() {
                let (ua, ub) = (UElement::monomial(p, a.clone()), UElement::monomial(p, b.clone()));
                ls.add_scaled(&product(p, &antipode_monomial(p, a), &ub), c);
                rs.add_scaled(&product(p, &ua, &antipode_monomial(p, b)), c);
            }
            let unit = if m.is_unit() {
                UElement::monomial(p, UPolyMonomial::unit())
            } else {
                UElement::zero(p)
            };
            if bad[2].is_none() && (ls != unit || rs != unit) {
                bad[2] = Some(format!("antipode identity fails on {m}"));
            }
        }
        for (part, b) in bad.iter().enumerate() {
            rep.check("hopf", p, &[("n", n as i64), ("part", part as i64)], b.is_none(), || b.clone().unwrap());
        }
    }
    Ok(rep)
}

fn coordinates(index: &HashMap<UPolyMonomial, usize>, a: &UElement) -> Vec<u32> {
    let mut v = vec![0; index.len()];
    for (m, c) in a.iter() {
        v[index[m]] = c;
    }
    v
}

/// Parts: 0 multiplicative, 1 comultiplicative, 2 onto, 3 kernel generators
/// vanish, 4 they generate the kernel.
fn rho_hopf(alg: &SteenrodAlgebra, max_degree: u32) -> Result<Report> {
    let p = alg.p();
    let ctx = alg.ctx();
    let mut rep = Report::new();
    let by_degree: Vec<Vec<UPolyMonomial>> = (0..=max_degree).map(|n| monomials(p, n)).collect();
    let images: Vec<Vec<DualElement>> = by_degree
        .iter()
        .map(|ms| ms.iter().map(|m| rho_monomial(p, m)).collect())
        .collect();
    let kernel = rho_kernel_generators(p, max_degree);
    for n in 0..=max_degree {
        let idx = |part: i64| [("n", n as i64), ("part", part)];

        let mut bad = None;
        'pairs: for a in 0..=n / 2 {
            for (x, rx) in by_degree[a as usize].iter().zip(&images[a as usize]) {
                for (y, ry) in by_degree[(n - a) as usize].iter().zip(&images[(n - a) as usize]) {
                    let lhs = rho(ctx, &product_monomials(p, x, y))?;
                    if lhs != dual_product(alg, rx, ry)? {
                        bad = Some(format!("rho({x} {y})"));
                        break 'pairs;
                    }
                }
            }
        }
        rep.check("rho-hopf", p, &idx(0), bad.is_none(), || bad.clone().unwrap());

        let mut bad = None;
        for m in &by_degree[n as usize] {
            let mut lhs = DualTensor::zero(p);
            for ((a, b), c) in coproduct_monomial(p, m).iter() {
                let t = rho_monomial(p, a).bilinear(&rho_monomial(p, b), |u, v| {
                    DualTensor::monomial(p, (u.clone(), v.clone()))
                });
                lhs.add_scaled(&t, c);
            }
            if lhs != dual_coproduct(alg, &rho_monomial(p, m))? {
                bad = Some(format!("coproduct square fails on {m}"));
                break;
            }
        }
        rep.check("rho-hopf", p, &idx(1), bad.is_none(), || bad.clone().unwrap());

        let dim = alg.dim(n)?;
        let rows = images[n as usize]
            .iter()
            .map(|u| dual_to_vector(alg, u, n))
            .collect::<Result<Vec<_>>>()?;
        let rank = Matrix::from_rows(p, dim, &rows).rank();
        rep.check("rho-hopf", p, &idx(2), rank == dim, || format!("image has dim {rank} of {dim}"));

        let here: Vec<&UElement> = kernel.iter().filter(|k| k.homogeneous_degree() == Some(n)).collect();
        let mut bad = None;
        for k in &here {
            if !rho(ctx, k)?.is_zero() {
                bad = Some(format!("rho({k}) is not 0"));
                break;
            }
        }
        rep.check("rho-hopf", p, &idx(3), bad.is_none(), || bad.clone().unwrap());

        let ms = &by_degree[n as usize];
        let index: HashMap<UPolyMonomial, usize> = ms.iter().cloned().enumerate().map(|(k, m)| (m, k)).collect();
        let mut ideal = Vec::new();
        for k in &kernel {
            let d = k.homogeneous_degree().unwrap_or(0);
            if d > n {
                continue;
            }
            for m in &by_degree[(n - d) as usize] {
                ideal.push(coordinates(&index, &product(p, k, &UElement::monomial(p, m.clone()))));
            }
        }
        let ideal_dim = Subspace::span(p, ms.len(), ideal).dim();
        let kernel_dim = ms.len() - rank;
        rep.check("rho-hopf", p, &idx(4), ideal_dim == kernel_dim, || {
            format!("ideal has dim {ideal_dim}, kernel {kernel_dim}")
        });
    }
    Ok(rep)
}

fn rho_filt(alg: &SteenrodAlgebra, r: &Ranges) -> Result<Report> {
    let p = alg.p();
    let mut rep = Report::new();
    let mut dual = DualFiltration::new(alg, DualKind::Annihilator);
    for n in 0..=r.max_degree {
        let ms = monomials(p, n);
        let dim = alg.dim(n)?;
        for i in r.levels.clone() {
            let rows = ms
                .iter()
                .filter(|m| m.level(p) as i64 <= i)
                .map(|m| dual_to_vector(alg, &rho_monomial(p, m), n))
                .collect::<Result<Vec<_>>>()?;
            let image = Subspace::span(p, dim, rows);
            let target = dual.get(i, n)?;
            rep.check("rho-filt", p, &[("i", i), ("n", n as i64)], image.equals(target.space()), || {
                format!("image has dim {}, F_{i} has dim {}", image.dim(), target.dim())
            });
        }
    }
    Ok(rep)
}

fn top_residue(p: u32, l: u32, k: u32) -> bool {
    let m = (l + k) % (2 * p);
    m == 0 || m == 2
}

/// The filtration is spanned by monomials, so each condition is checked
/// termwise. Parts are named after the condition.
fn induced_filt(p: u32, r: &Ranges) -> Result<Report> {
    let mut rep = Report::new();
    let by_degree: Vec<Vec<UPolyMonomial>> = (0..=r.max_degree).map(|n| monomials(p, n)).collect();
    for n in 0..=r.max_degree {
        let ms = &by_degree[n as usize];
        let idx = |c: i64| [("n", n as i64), ("condition", c)];

        for i in (*r.levels.start()).min(0) - 1..=-1 {
            let count = ms.iter().filter(|m| (m.level(p) as i64) <= i).count();
            rep.check("induced-filt", p, &[("n", n as i64), ("condition", 1), ("i", i)], count == 0, || {
                format!("{count} monomials below level 0")
            });
        }

        let bad = ms.iter().find(|m| m.level(p) > n);
        rep.check("induced-filt", p, &idx(2), bad.is_none(), || format!("{} has level above its degree", bad.unwrap()));

        let (mut bad3, mut bad4) = (None, None);
        for m in ms {
            let l = m.level(p);
            for ((a, b), _) in coproduct_monomial(p, m).iter() {
                if bad3.is_none() && b.level(p) > l {
                    bad3 = Some(format!("{m}: {a} ⊗ {b}"));
                }
                if bad4.is_none() && a.level(p) > l + b.degree(p) {
                    bad4 = Some(format!("{m}: {a} ⊗ {b}"));
                }
            }
        }
        rep.check("induced-filt", p, &idx(3), bad3.is_none(), || bad3.clone().unwrap());
        rep.check("induced-filt", p, &idx(4), bad4.is_none(), || bad4.clone().unwrap());

        let mut bad5 = None;
        'pairs: for a in 0..=n / 2 {
            for x in &by_degree[a as usize] {
                for y in &by_degree[(n - a) as usize] {
                    let bound = x.level(p) + y.level(p);
                    if product_monomials(p, x, y).keys().any(|z| z.level(p) > bound) {
                        bad5 = Some(format!("{x} {y}"));
                        break 'pairs;
                    }
                }
            }
        }
        rep.check("induced-filt", p, &idx(5), bad5.is_none(), || bad5.clone().unwrap());

        let bad6 = ms.iter().find(|m| {
            let l = m.level(p);
            n < top_degree(p, l) || !top_residue(p, l, n)
        });
        rep.check("induced-filt", p, &idx(6), bad6.is_none(), || {
            let m = bad6.unwrap();
            format!("{m} has level {} in degree {n}", m.level(p))
        });
    }
    Ok(rep)
}

/// The (level, degree) of the quotient described by s and eps:
/// (2s + eps, 2s(p-1) + eps) at odd p and (s, s) at p = 2.
pub fn top_quotient_position(p: u32, s: u32, eps: u32) -> (u32, u32) {
    if p == 2 {
        (s, s)
    } else {
        (2 * s + eps, 2 * s * (p - 1) + eps)
    }
}

/// F_l of the dual of A_(p)* in degree n, as the annihilator of F_{l-1},
/// in coordinates dual to `monomials(p, n)`.
fn dual_upoly_filtration(p: u32, ms: &[UPolyMonomial], l: i64) -> Subspace {
    let rows: Vec<Vec<u32>> = ms
        .iter()
        .enumerate()
        .filter(|(_, m)| (m.level(p) as i64) < l)
        .map(|(k, _)| crate::linalg::unit_vector(ms.len(), k))
        .collect();
    if rows.is_empty() {
        return Subspace::full(p, ms.len());
    }
    Subspace::span(p, ms.len(), Matrix::from_rows(p, ms.len(), &rows).kernel())
}

/// For each s and eps: the stated dual vectors lie in F_l, are independent
/// modulo F_{l+1} and are as many as dim E_l. A note records when the
/// quotient has dimension above 1, where (E7*) fails.
fn induced_filt2(p: u32, max_s: u32) -> Result<Report> {
    let mut rep = Report::new();
    let eps_range = if p == 2 { 0..=0 } else { 0..=1 };
    for s in 0..=max_s {
        for eps in eps_range.clone() {
            let (l, n) = top_quotient_position(p, s, eps);
            let ms = monomials(p, n);
            let fl = dual_upoly_filtration(p, &ms, l as i64);
            let next = dual_upoly_filtration(p, &ms, l as i64 + 1);
            let stated = top_quotient_monomials(p, s, eps);
            let vectors: Vec<Vec<u32>> = stated
                .iter()
                .filter_map(|m| ms.iter().position(|x| x == m))
                .map(|k| crate::linalg::unit_vector(ms.len(), k))
                .collect();
            let quotient = fl.dim() - next.dim();
            let inside = vectors.len() == stated.len() && vectors.iter().all(|v| fl.contains(v));
            let independent = next.sum(&Subspace::span(p, ms.len(), vectors.clone())).dim() == next.dim() + stated.len();
            let idx = [("s", s as i64), ("eps", eps as i64), ("level", l as i64), ("n", n as i64)];
            rep.check("induced-filt2", p, &idx, inside && independent && quotient == stated.len(), || {
                format!(
                    "{} stated monomials, quotient dim {quotient}, inside {inside}, independent {independent}",
                    stated.len()
                )
            });
            if quotient > 1 {
                rep.note("induced-filt2", p, &idx, format!("quotient has dim {quotient}, so (E7*) fails here"));
            }
        }
    }
    Ok(rep)
}

/// The two test rings used for U_n at each prime: a truncated polynomial
/// ring and an exterior ⊗ truncated polynomial ring.
pub fn unipotent_rings(p: u32) -> Result<[GradedTestRing; 2]> {
    if p == 2 {
        Ok([
            GradedTestRing::truncated_polynomial(2, 1, 8)?,
            GradedTestRing::exterior_polynomial(2, 1, 2, 4)?,
        ])
    } else {
        Ok([
            GradedTestRing::truncated_polynomial(p, 2, 4)?,
            GradedTestRing::exterior_polynomial(p, 1, 4, 5)?,
        ])
    }
}

/// The ring used for theta on the dual algebra to truncation p^3: it has
/// classes in the degrees of every xi_i and tau_i with i <= 3.
pub fn appendix_ring(p: u32) -> Result<GradedTestRing> {
    if p == 2 {
        GradedTestRing::truncated_polynomial(2, 1, 8)
    } else {
        GradedTestRing::exterior_polynomial(p, 1, 4, (p.pow(3) - 1) / 2 + 1)
    }
}

/// Parts: 0 homomorphism, 1 inverse via the antipode, 2 counit to identity,
/// 3 bijectivity on the full set of maps (when it is small enough to list).
fn theta_family(p: u32, pairs: usize, seed: u64) -> Result<Report> {
    let mut rep = Report::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (which, ring) in unipotent_rings(p)?.iter().enumerate() {
        for n in [3u32, 4] {
            let base = [("ring", which as i64), ("n", n as i64)];
            let id = UnipotentMatrix::identity(ring, n);
            let ok = theta_n(ring, &AlgebraMap::trivial(ring, n))? == id;
            rep.check("theta-n", p, &[base[0], base[1], ("part", 2)], ok, || "counit is not sent to 1".into());
            for k in 0..pairs {
                let phi = AlgebraMap::random(ring, n, &mut rng);
                let psi = AlgebraMap::random(ring, n, &mut rng);
                let lhs = theta_n(ring, &phi.convolve(&psi, ring)?)?;
                let rhs = theta_n(ring, &phi)?.multiply(&theta_n(ring, &psi)?, ring)?;
                let idx = [base[0], base[1], ("part", 0), ("pair", k as i64)];
                rep.check("theta-n", p, &idx, lhs == rhs, || {
                    format!("{} vs {}", lhs.format(ring), rhs.format(ring))
                });
                let inv = theta_n(ring, &phi.compose_antipode(ring)?)?;
                let ok = inv.multiply(&theta_n(ring, &phi)?, ring)? == id && theta_n(ring, &phi)?.multiply(&inv, ring)? == id;
                let idx = [base[0], base[1], ("part", 1), ("pair", k as i64)];
                rep.check("theta-n", p, &idx, ok, || format!("phi ∘ iota gives {}", inv.format(ring)));
            }
            if let Some(maps) = all_maps(ring, n, 1 << 14) {
                let images = maps.iter().map(|f| theta_n(ring, f)).collect::<Result<Vec<_>>>()?;
                let mut seen = std::collections::HashSet::new();
                let distinct = images.iter().all(|m| seen.insert(m.format(ring)));
                rep.check("theta-n", p, &[base[0], base[1], ("part", 3), ("maps", maps.len() as i64)], distinct, || {
                    "two maps have the same matrix".into()
                });
            }
        }
    }
    Ok(rep)
}
