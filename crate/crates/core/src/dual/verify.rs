//! Checks of the dual filtration conditions (E1*)-(E7*), of the two
//! presentations of the dual filtration against each other, and of the
//! duality between the primal and dual conditions.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use super::*;
use crate::filtration::verify::{verify as verify_primal, Family, Ranges};
use crate::filtration::{filtration_dim_by_words, top_degree};
use crate::report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DualFamily {
    E1,
    E2,
    E3,
    E4,
    E5,
    E6,
    E7,
    /// Monomial and annihilator presentations agree, with the expected dimension.
    Filt3,
    /// Pairing matrices are the identity.
    Pairing,
    /// Coproducts and products are adjoint under the pairing.
    Adjoint,
    /// (El) on the algebra holds exactly when (El*) holds on the dual.
    Duality,
}

impl DualFamily {
    pub const ALL: [DualFamily; 11] = [
        DualFamily::E1,
        DualFamily::E2,
        DualFamily::E3,
        DualFamily::E4,
        DualFamily::E5,
        DualFamily::E6,
        DualFamily::E7,
        DualFamily::Filt3,
        DualFamily::Pairing,
        DualFamily::Adjoint,
        DualFamily::Duality,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DualFamily::E1 => "e1*",
            DualFamily::E2 => "e2*",
            DualFamily::E3 => "e3*",
            DualFamily::E4 => "e4*",
            DualFamily::E5 => "e5*",
            DualFamily::E6 => "e6*",
            DualFamily::E7 => "e7*",
            DualFamily::Filt3 => "dual-filt3",
            DualFamily::Pairing => "pairing",
            DualFamily::Adjoint => "adjoint",
            DualFamily::Duality => "e1-7",
        }
    }

    /// The primal condition this one dualises, for (E1*)-(E7*).
    pub fn primal(self) -> Option<Family> {
        Some(match self {
            DualFamily::E1 => Family::E1,
            DualFamily::E2 => Family::E2,
            DualFamily::E3 => Family::E3,
            DualFamily::E4 => Family::E4,
            DualFamily::E5 => Family::E5,
            DualFamily::E6 => Family::E6,
            DualFamily::E7 => Family::E7,
            _ => return None,
        })
    }
}

impl fmt::Display for DualFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DualFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.to_ascii_lowercase();
        DualFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown dual family {s:?}")))
    }
}

/// Runs one family against the dual filtration of the given kind. `Filt3`,
/// `Pairing`, `Adjoint` and `Duality` ignore the kind.
pub fn verify_dual(
    alg: &SteenrodAlgebra,
    family: DualFamily,
    r: &Ranges,
    kind: DualKind,
) -> Result<Report> {
    alg.ctx().check_degree(r.max_degree)?;
    let mut f = DualFiltration::new(alg, kind);
    match family {
        DualFamily::E1 => e1(&mut f, r),
        DualFamily::E2 => e2(&mut f, r),
        DualFamily::E3 => e3(&mut f, r),
        DualFamily::E4 => e4(&mut f, r),
        DualFamily::E5 => e5(&mut f, r),
        DualFamily::E6 => e6(&mut f, r),
        DualFamily::E7 => e7(&mut f, r),
        DualFamily::Filt3 => filt3(alg, r),
        DualFamily::Pairing => pairing_identity(alg, r),
        DualFamily::Adjoint => adjoint(alg, r),
        DualFamily::Duality => duality(alg, r),
    }
}

fn e1(f: &mut DualFiltration, r: &Ranges) -> Result<Report> {
    let p = f.alg.p();
    let mut rep = Report::new();
    for i in (*r.levels.start()).min(0) - 1..=-1 {
        for n in 0..=r.max_degree {
            let d = f.get(i, n)?.dim();
            rep.check("e1*", p, &[("i", i), ("n", n as i64)], d == 0, || format!("dim {d}"));
        }
    }
    Ok(rep)
}

fn e2(f: &mut DualFiltration, r: &Ranges) -> Result<Report> {
    let p = f.alg.p();
    let mut rep = Report::new();
    for n in 0..=r.max_degree {
        let s = f.get(n as i64, n)?;
        let (d, full) = (s.dim(), s.ambient_dim());
        rep.check("e2*", p, &[("n", n as i64)], d == full, || {
            format!("F_{n} has dim {d} of {full}")
        });
    }
    Ok(rep)
}

/// Splits a tensor of total degree n by the degree of the chosen factor,
/// collecting the other factor for each monomial of the chosen one.
fn slices(p: u32, t: &DualTensor, left: bool) -> HashMap<DualMonomial, DualElement> {
    let mut out: HashMap<DualMonomial, DualElement> = HashMap::new();
    for ((a, b), c) in t.iter() {
        let (key, other) = if left { (a, b) } else { (b, a) };
        out.entry(key.clone())
            .or_insert_with(|| DualElement::zero(p))
            .add_term(other.clone(), c);
    }
    out
}

fn e3(f: &mut DualFiltration, r: &Ranges) -> Result<Report> {
    let alg = f.alg;
    let p = alg.p();
    let mut rep = Report::new();
    for i in r.levels.clone() {
        for n in 0..=r.max_degree {
            let mut bad = None;
            let elements = f.get(i, n)?.elements().to_vec();
            'cell: for u in &elements {
                for (x, rest) in slices(p, &dual_coproduct(alg, u)?, true) {
                    let m = n - x.degree(p);
                    if !f.get(i, m)?.contains(alg, &rest)? {
                        bad = Some(format!("{u}: {x} ⊗ ({rest})"));
                        break 'cell;
                    }
                }
            }
            rep.check("e3*", p, &[("i", i), ("n", n as i64)], bad.is_none(), || bad.clone().unwrap());
        }
    }
    Ok(rep)
}

/// The (k-j, j) component of mu*(u) must lie in F_{i+j} ⊗ A_j, read literally.
fn e4(f: &mut DualFiltration, r: &Ranges) -> Result<Report> {
    let alg = f.alg;
    let p = alg.p();
    let mut rep = Report::new();
    for i in r.levels.clone() {
        for k in 0..=r.max_degree {
            let mut bad = None;
            let elements = f.get(i, k)?.elements().to_vec();
            'cell: for u in &elements {
                for (y, rest) in slices(p, &dual_coproduct(alg, u)?, false) {
                    let j = y.degree(p);
                    if !f.get(i + j as i64, k - j)?.contains(alg, &rest)? {
                        bad = Some(format!("{u}: ({rest}) ⊗ {y}"));
                        break 'cell;
                    }
                }
            }
            rep.check("e4*", p, &[("i", i), ("k", k as i64)], bad.is_none(), || bad.clone().unwrap());
        }
    }
    Ok(rep)
}

fn e5(f: &mut DualFiltration, r: &Ranges) -> Result<Report> {
    let alg = f.alg;
    let p = alg.p();
    let mut rep = Report::new();
    for j in r.levels.clone() {
        for k in r.levels.clone() {
            for a in 0..=r.max_degree {
                for b in 0..=r.max_degree - a {
                    let us = f.get(j, a)?.elements().to_vec();
                    let vs = f.get(k, b)?.elements().to_vec();
                    let mut bad = None;
                    'cell: for u in &us {
                        for v in &vs {
                            let w = dual_product(alg, u, v)?;
                            if !f.get(j + k, a + b)?.contains(alg, &w)? {
                                bad = Some(format!("({u}) * ({v})"));
                                break 'cell;
                            }
                        }
                    }
                    let idx = [("j", j), ("k", k), ("left", a as i64), ("right", b as i64)];
                    rep.check("e5*", p, &idx, bad.is_none(), || bad.clone().unwrap());
                }
            }
        }
    }
    Ok(rep)
}

fn top_residue(p: u32, i: i64, k: u32) -> bool {
    let m = (i + k as i64).rem_euclid(2 * p as i64);
    m == 0 || m == 2
}

fn e6(f: &mut DualFiltration, r: &Ranges) -> Result<Report> {
    let p = f.alg.p();
    let mut rep = Report::new();
    for l in r.levels.clone().filter(|&l| l >= 0) {
        let top = top_degree(p, l as u32);
        for k in 0..=r.max_degree {
            if k >= top && top_residue(p, l, k) {
                continue;
            }
            let d = f.quotient_dim(l, k)?;
            rep.check("e6*", p, &[("level", l), ("k", k as i64)], d == 0, || format!("dim {d}"));
        }
    }
    Ok(rep)
}

fn e7(f: &mut DualFiltration, r: &Ranges) -> Result<Report> {
    let alg = f.alg;
    let p = alg.p();
    let mut rep = Report::new();
    for l in r.levels.clone().filter(|&l| l >= 0) {
        let top = top_degree(p, l as u32);
        if top > alg.ctx().degree_cap() {
            continue;
        }
        let d = f.quotient_dim(l, top)?;
        let g = DualElement::monomial(p, dual_top_generator(p, l as u32));
        let witnessed = f.get(l, top)?.contains(alg, &g)? && !f.get(l - 1, top)?.contains(alg, &g)?;
        rep.check("e7*", p, &[("level", l), ("k", top as i64)], d == 1 && witnessed, || {
            format!("dim {d}, generator {g} witnesses: {witnessed}")
        });
    }
    Ok(rep)
}

fn filt3(alg: &SteenrodAlgebra, r: &Ranges) -> Result<Report> {
    let p = alg.p();
    let mut rep = Report::new();
    for i in r.levels.clone() {
        for n in 0..=r.max_degree {
            let mono = dual_filtration_basis(alg, i, n, DualKind::Monomial)?;
            let ann = dual_filtration_basis(alg, i, n, DualKind::Annihilator)?;
            let expected = alg.dim(n)? - filtration_dim_by_words(p, i + 1, n);
            let ok = mono.equals(&ann) && mono.dim() == expected;
            rep.check("dual-filt3", p, &[("i", i), ("n", n as i64)], ok, || {
                format!("monomial dim {}, annihilator dim {}, expected {expected}", mono.dim(), ann.dim())
            });
        }
    }
    Ok(rep)
}

fn pairing_identity(alg: &SteenrodAlgebra, r: &Ranges) -> Result<Report> {
    let p = alg.p();
    let mut rep = Report::new();
    for n in 0..=r.max_degree {
        let m = pairing_matrix(alg, n)?;
        rep.check("pairing", p, &[("n", n as i64)], m.is_identity(), || {
            format!("{}x{} pairing matrix is not the identity", m.rows(), m.cols())
        });
    }
    Ok(rep)
}

/// Both adjunctions, exhaustively in each degree: <mu*(u), x ⊗ y> = <u, xy>
/// and <delta(x), u ⊗ v> = <x, uv>.
fn adjoint(alg: &SteenrodAlgebra, r: &Ranges) -> Result<Report> {
    let p = alg.p();
    let mut rep = Report::new();
    for n in 0..=r.max_degree {
        let mut bad = None;
        for u in dual_basis(alg, n)? {
            let u = DualElement::monomial(p, u);
            let closed = dual_coproduct(alg, &u)?;
            let read = coproduct_by_pairing(alg, &u)?;
            if closed != read {
                bad = Some(format!(
                    "mu*({u}) = {} but pairing gives {}",
                    format_tensor(&closed),
                    format_tensor(&read)
                ));
                break;
            }
        }
        rep.check("adjoint", p, &[("n", n as i64), ("side", 0)], bad.is_none(), || bad.clone().unwrap());

        let mut table: HashMap<(DualMonomial, DualMonomial), Vec<(MilnorMonomial, u32)>> = HashMap::new();
        for x in &alg.basis(n)?.monomials {
            for ((a, b), c) in alg.coproduct(&alg.monomial(x.clone()))?.iter() {
                table
                    .entry((DualMonomial::from(a), DualMonomial::from(b)))
                    .or_default()
                    .push((x.clone(), c));
            }
        }
        let mut bad = None;
        'degree: for a in 0..=n {
            for u in dual_basis(alg, a)? {
                for v in dual_basis(alg, n - a)? {
                    let uv = product_monomials(p, &u, &v);
                    let mut from_coproduct = Element::zero(p);
                    for (x, c) in table.get(&(u.clone(), v.clone())).into_iter().flatten() {
                        from_coproduct.add_term(x.clone(), *c);
                    }
                    let from_product = uv.map_keys(|m| MilnorMonomial::from(m));
                    if from_coproduct != from_product {
                        bad = Some(format!("{u} ⊗ {v}: coproduct side {from_coproduct}, product {uv}"));
                        break 'degree;
                    }
                }
            }
        }
        rep.check("adjoint", p, &[("n", n as i64), ("side", 1)], bad.is_none(), || bad.clone().unwrap());
    }
    Ok(rep)
}

/// For each l, the primal condition (El) and the dual condition (El*) on the
/// annihilator presentation give the same verdict over the same ranges.
fn duality(alg: &SteenrodAlgebra, r: &Ranges) -> Result<Report> {
    let p = alg.p();
    let mut rep = Report::new();
    for (l, fam) in DualFamily::ALL[..7].iter().enumerate() {
        let primal = verify_primal(alg, fam.primal().expect("E1-E7"), r)?;
        let dual = verify_dual(alg, *fam, r, DualKind::Annihilator)?;
        let ok = primal.passed() == dual.passed() && !primal.is_empty() && !dual.is_empty();
        rep.check("e1-7", p, &[("l", l as i64 + 1)], ok, || {
            format!("primal {primal}; dual {dual}")
        });
    }
    Ok(rep)
}
