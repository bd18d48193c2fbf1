//! Report-producing checks: the short exact sequence for free modules, the
//! two instability criteria, the suspension isomorphism, the triangle
//! identity of ℱ and exactness of Φ.

use std::fmt;
use std::str::FromStr;

use super::functors::*;
use super::{GradedSpace, ModuleMap, UnstableModule};
use crate::error::{Error, Result};
use crate::linalg::unit_vector;
use crate::report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum UnstableFamily {
    /// 0 → Φℱ(V) → ℱ(V) → Σℱ(Σ^{-1}V) → 0 is exact.
    Ses,
    /// Both instability criteria agree on every constructed module.
    Criteria,
    /// ΣM → ΣΩΣM is an isomorphism.
    Suspension,
    /// ε_{ℱV} ∘ ℱη_V = id.
    Triangle,
    /// Φ carries the free short exact sequence to a short exact sequence.
    PhiExact,
    /// Ω and Ω¹ are unstable and dim ΣΩM + rank λ = dim M.
    Omega,
}

impl UnstableFamily {
    pub const ALL: [UnstableFamily; 6] = [
        UnstableFamily::Ses,
        UnstableFamily::Criteria,
        UnstableFamily::Suspension,
        UnstableFamily::Triangle,
        UnstableFamily::PhiExact,
        UnstableFamily::Omega,
    ];

    pub fn name(self) -> &'static str {
        match self {
            UnstableFamily::Ses => "ses",
            UnstableFamily::Criteria => "um",
            UnstableFamily::Suspension => "suspension",
            UnstableFamily::Triangle => "triangle",
            UnstableFamily::PhiExact => "phi-exact",
            UnstableFamily::Omega => "omega",
        }
    }
}

impl fmt::Display for UnstableFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for UnstableFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.to_ascii_lowercase();
        UnstableFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown unstable family {s:?}")))
    }
}

/// Which spaces V and which cap to sweep.
#[derive(Debug, Clone)]
pub struct UnstableRanges {
    pub max_total_dim: usize,
    pub max_generator_degree: i64,
    pub top: u32,
}

impl Default for UnstableRanges {
    fn default() -> Self {
        UnstableRanges {
            max_total_dim: 3,
            max_generator_degree: 5,
            top: 20,
        }
    }
}

/// V as a single index: the decimal digits are dim V^0, dim V^1, ... read
/// from the right.
pub fn space_code(v: &GradedSpace) -> i64 {
    v.dims().iter().map(|(&n, &d)| d as i64 * 10i64.pow(n as u32)).sum()
}

fn injective(f: &ModuleMap, k: u32) -> bool {
    f.rank(k) == f.matrix(k).cols()
}

fn surjective(f: &ModuleMap, k: u32) -> bool {
    f.rank(k) == f.matrix(k).rows()
}

/// Exactness of 0 → A → B → C → 0 degree by degree, given f: A → B and g: B → C.
fn check_short_exact(
    rep: &mut Report,
    family: &str,
    p: u32,
    code: i64,
    f: &ModuleMap,
    g: &ModuleMap,
) -> Result<()> {
    let top = f.top().min(g.top());
    for k in 0..=top {
        let composite = g.after(f)?;
        let (a, b, c) = (f.matrix(k).cols(), f.matrix(k).rows(), g.matrix(k).rows());
        let ok = injective(f, k) && surjective(g, k) && composite.matrix(k).rank() == 0 && a + c == b;
        rep.check(family, p, &[("v", code), ("k", k as i64)], ok, || {
            format!(
                "dims {a} -> {b} -> {c}, ranks {} and {}, composite rank {}",
                f.rank(k),
                g.rank(k),
                composite.matrix(k).rank()
            )
        });
    }
    Ok(())
}

/// The pieces of the free short exact sequence for V.
pub struct FreeSes {
    pub free: FreeModule,
    pub phi: UnstableModule,
    pub lambda: ModuleMap,
    pub quotient: UnstableModule,
    pub rho: ModuleMap,
}

pub fn free_ses(ctx: &UnstableContext, v: &GradedSpace, top: u32) -> Result<FreeSes> {
    let free = free_with_cells(ctx, v, top)?;
    let phi_m = phi(ctx, &free.module)?;
    let lam = lambda(ctx, &free.module, &phi_m)?;
    let (quotient, rho) = rho_free(ctx, &free)?;
    Ok(FreeSes {
        free,
        phi: phi_m,
        lambda: lam,
        quotient,
        rho,
    })
}

/// Exactness of 0 → Φℱ(V) → ℱ(V) → Σℱ(Σ^{-1}V) → 0 in degrees ≤ top, and
/// that λ and ρ commute with the action.
pub fn check_ses_free(ctx: &UnstableContext, v: &GradedSpace, top: u32) -> Result<Report> {
    let p = ctx.p();
    let code = space_code(v);
    let ses = free_ses(ctx, v, top)?;
    let mut rep = Report::new();
    check_short_exact(&mut rep, "ses", p, code, &ses.lambda, &ses.rho)?;
    let lam_bad = ses.lambda.module_map_failure(&ses.phi, &ses.free.module);
    rep.check("ses", p, &[("v", code), ("map", 0)], lam_bad.is_none(), || {
        format!("λ fails to commute with {}", lam_bad.clone().unwrap_or_default())
    });
    let rho_bad = ses.rho.module_map_failure(&ses.free.module, &ses.quotient);
    rep.check("ses", p, &[("v", code), ("map", 1)], rho_bad.is_none(), || {
        format!("ρ fails to commute with {}", rho_bad.clone().unwrap_or_default())
    });
    Ok(rep)
}

/// Applies Φ to the free short exact sequence and checks exactness.
pub fn check_phi_exact(ctx: &UnstableContext, v: &GradedSpace, top: u32) -> Result<Report> {
    let p = ctx.p();
    let ses = free_ses(ctx, v, top)?;
    let phi_phi = phi(ctx, &ses.phi)?;
    let phi_free = phi(ctx, &ses.free.module)?;
    let phi_quot = phi(ctx, &ses.quotient)?;
    let f = phi_map(p, &ses.lambda, &ses.phi, &ses.free.module)?;
    let g = phi_map(p, &ses.rho, &ses.free.module, &ses.quotient)?;
    let mut rep = Report::new();
    let code = space_code(v);
    check_short_exact(&mut rep, "phi-exact", p, code, &f, &g)?;
    for (i, (map, s, t)) in [(&f, &phi_phi, &phi_free), (&g, &phi_free, &phi_quot)].into_iter().enumerate() {
        let bad = map.module_map_failure(s, t);
        rep.check("phi-exact", p, &[("v", code), ("map", i as i64)], bad.is_none(), || {
            format!("Φ of the map fails to commute with {}", bad.clone().unwrap_or_default())
        });
    }
    Ok(rep)
}

/// θ·(1 ⊗ v) = θ ⊗ v for every basis vector of ℱ(V).
pub fn check_triangle(ctx: &UnstableContext, v: &GradedSpace, top: u32) -> Result<Report> {
    let p = ctx.p();
    let free = free_with_cells(ctx, v, top)?;
    let m = &free.module;
    let code = space_code(v);
    let mut rep = Report::new();
    for k in 0..=top {
        let mut bad = None;
        for (idx, (s, theta)) in free.cells[k as usize].iter().enumerate() {
            let n = free.generators[*s] as u32;
            let unit = free
                .position(n, *s, &crate::monomial::MilnorMonomial::unit())
                .ok_or_else(|| Error::Invalid(format!("generator {s} missing")))?;
            let image = m.act(theta, n, &unit_vector(m.dim(n), unit));
            if image != unit_vector(m.dim(k), idx) {
                bad = Some(format!("{theta} applied to generator {s}"));
                break;
            }
        }
        rep.check("triangle", p, &[("v", code), ("k", k as i64)], bad.is_none(), || bad.clone().unwrap_or_default());
    }
    Ok(rep)
}

/// check_unstable and check_unstable_top agree, and (for modules that are
/// expected to be unstable) both hold.
pub fn check_criteria(rep: &mut Report, label: i64, m: &UnstableModule, expect_unstable: bool) {
    let (a, b) = (m.check_unstable(), m.check_unstable_top());
    rep.check("um", m.p(), &[("module", label)], a == b && (a || !expect_unstable), || {
        format!("weight criterion {a}, top generator criterion {b}")
    });
}

/// λ_{ΣM} = 0, ΩΣM has the same table as M, and ΣM → ΣΩΣM is the identity.
pub fn check_suspension(ctx: &UnstableContext, m: &UnstableModule, label: i64) -> Result<Report> {
    let p = ctx.p();
    let sm = m.suspend(1)?;
    let data = lambda_data(ctx, &sm)?;
    let (coker, unit) = sm.quotient(&data.image)?;
    let back = coker.suspend(-1)?;
    let mut rep = Report::new();
    rep.check("suspension", p, &[("module", label), ("part", 0)], data.lambda.is_zero(), || {
        "λ on a suspension is nonzero".into()
    });
    let same = back.dims() == m.dims() && back.actions() == m.actions();
    rep.check("suspension", p, &[("module", label), ("part", 1)], same, || {
        format!("ΩΣM has dims {:?}, M has {:?}", back.dims(), m.dims())
    });
    let iso = (0..=unit.top()).all(|k| unit.matrix(k).is_identity() || unit.matrix(k).rows() + unit.matrix(k).cols() == 0);
    rep.check("suspension", p, &[("module", label), ("part", 2)], iso, || "the unit is not invertible".into());
    Ok(rep)
}

/// Ω and Ω¹ of M are unstable, both criteria agree on them, and
/// dim ΣΩM + rank λ = dim M in each degree.
pub fn check_omega(ctx: &UnstableContext, m: &UnstableModule, label: i64) -> Result<Report> {
    let p = ctx.p();
    let data = lambda_data(ctx, m)?;
    let om = omega(ctx, m)?;
    let om1 = omega1(ctx, m)?;
    let mut rep = Report::new();
    for k in 1..=m.top() {
        let ok = om.dim(k - 1) + data.image[k as usize].dim() == m.dim(k);
        rep.check("omega", p, &[("module", label), ("k", k as i64)], ok, || {
            format!("dim ΩM^{} = {}, rank λ = {}, dim M = {}", k - 1, om.dim(k - 1), data.image[k as usize].dim(), m.dim(k))
        });
    }
    check_criteria(&mut rep, label, &om, true);
    check_criteria(&mut rep, label, &om1, true);
    Ok(rep)
}

/// Runs a family over every V of total dimension ≤ max_total_dim supported
/// in degrees ≤ max_generator_degree.
pub fn verify_unstable(ctx: &UnstableContext, family: UnstableFamily, r: &UnstableRanges) -> Result<Report> {
    ctx.alg().ctx().check_degree(r.top)?;
    let mut rep = Report::new();
    for v in GradedSpace::all_small(r.max_total_dim, r.max_generator_degree) {
        let code = space_code(&v);
        match family {
            UnstableFamily::Ses => rep.extend(check_ses_free(ctx, &v, r.top)?),
            UnstableFamily::PhiExact => rep.extend(check_phi_exact(ctx, &v, r.top)?),
            UnstableFamily::Triangle => rep.extend(check_triangle(ctx, &v, r.top)?),
            UnstableFamily::Criteria => {
                let ses = free_ses(ctx, &v, r.top)?;
                check_criteria(&mut rep, code, &ses.free.module, true);
                check_criteria(&mut rep, code, &ses.phi, true);
                check_criteria(&mut rep, code, &ses.quotient, true);
                if r.top > 0 {
                    check_criteria(&mut rep, code, &omega(ctx, &ses.free.module)?, true);
                    check_criteria(&mut rep, code, &omega1(ctx, &ses.free.module)?, true);
                }
            }
            UnstableFamily::Suspension => {
                let m = free(ctx, &v, r.top.saturating_sub(1))?;
                rep.extend(check_suspension(ctx, &m, code)?);
            }
            UnstableFamily::Omega => {
                if r.top > 0 {
                    rep.extend(check_omega(ctx, &free(ctx, &v, r.top)?, code)?);
                }
            }
        }
    }
    Ok(rep)
}
