//! Exhaustive and sampled checks of the filtration's structural properties.
//! Failures become report records rather than errors; errors are reserved
//! for requests beyond the degree cap.

use std::collections::HashMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::milnor::pth_root_monomial;
use crate::report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// Admissible and Milnor presentations of F_i have the same span.
    Span,
    /// Each Milnor monomial lies in F_w and not in F_{w+1}, w its weight.
    Level,
    E1,
    E2,
    E3,
    E4,
    E5,
    E6,
    E7,
    E8,
    E9,
    Fil1,
    Fil2,
    A5,
    Cong1,
    Cong2,
    Cong22,
    Cong3,
    Cong32,
    Cong4,
    Cong42,
}

impl Family {
    pub const ALL: [Family; 21] = [
        Family::Span,
        Family::Level,
        Family::E1,
        Family::E2,
        Family::E3,
        Family::E4,
        Family::E5,
        Family::E6,
        Family::E7,
        Family::E8,
        Family::E9,
        Family::Fil1,
        Family::Fil2,
        Family::A5,
        Family::Cong1,
        Family::Cong2,
        Family::Cong22,
        Family::Cong3,
        Family::Cong32,
        Family::Cong4,
        Family::Cong42,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Span => "span",
            Family::Level => "level",
            Family::E1 => "e1",
            Family::E2 => "e2",
            Family::E3 => "e3",
            Family::E4 => "e4",
            Family::E5 => "e5",
            Family::E6 => "e6",
            Family::E7 => "e7",
            Family::E8 => "e8",
            Family::E9 => "e9",
            Family::Fil1 => "fil1",
            Family::Fil2 => "fil2",
            Family::A5 => "a5",
            Family::Cong1 => "cong1",
            Family::Cong2 => "cong2",
            Family::Cong22 => "cong22",
            Family::Cong3 => "cong3",
            Family::Cong32 => "cong32",
            Family::Cong4 => "cong4",
            Family::Cong42 => "cong42",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.to_ascii_lowercase();
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown filtration family {s:?}")))
    }
}

/// What to sweep. `levels` bounds the filtration index where a family has
/// one; `max_degree` bounds operand degrees for (E3)-(E5) and result degrees
/// elsewhere.
#[derive(Debug, Clone)]
pub struct Ranges {
    pub levels: RangeInclusive<i64>,
    pub max_degree: u32,
    pub seed: u64,
    pub samples: usize,
}

impl Default for Ranges {
    fn default() -> Self {
        Ranges {
            levels: 0..=10,
            max_degree: 14,
            seed: 0,
            samples: 200,
        }
    }
}

pub fn verify(alg: &SteenrodAlgebra, family: Family, r: &Ranges) -> Result<Report> {
    alg.ctx().check_degree(r.max_degree)?;
    match family {
        Family::Span => span(alg, r),
        Family::Level => level(alg, r),
        Family::E1 => e1(alg, r),
        Family::E2 => e2(alg, r),
        Family::E3 => e3(alg, r),
        Family::E4 => e4(alg, r),
        Family::E5 => e5(alg, r),
        Family::E6 => e6(alg, r),
        Family::E7 => e7(alg, r),
        Family::E8 | Family::A5 => a5(alg, r, family.name()),
        Family::E9 => e9(alg, r),
        Family::Fil1 => fil1(alg, r),
        Family::Fil2 => fil2(alg, r),
        Family::Cong1 => cong1(alg, r),
        Family::Cong2 | Family::Cong22 => cong2(alg, r),
        Family::Cong3 | Family::Cong32 => cong3(alg, r),
        Family::Cong4 | Family::Cong42 => cong4(alg, r),
    }
}

fn monomials(alg: &SteenrodAlgebra, n: u32) -> Result<Vec<MilnorMonomial>> {
    Ok(alg.basis(n)?.monomials.clone())
}

fn span(alg: &SteenrodAlgebra, r: &Ranges) -> Result<Report> {
    let p = alg.p();
    let mut rep = Report::new();
    for n in 0..=r.max_degree {
        for i in r.levels.clone() {
            let a = filtration_basis(alg, i, n, BasisKind::Admissible)?;
            let b = filtration_basis(alg, i, n, BasisKind::Milnor)?;
            let ok = subspace_equal(&a, &b)?;
            rep.check("span", p, &[("i", i), ("n", n as i64)], ok, || {
                format!("admissible dim {} vs milnor dim {}", a.dim(), b.dim())
            });
        }
    }
    Ok(rep)
}

fn level(alg: &SteenrodAlgebra, r: &Ranges) -> Result<Report> {
    let p = alg.p();
    let mut rep = Report::new();
    for n in 0..=r.max_degree {
        let mut spaces = HashMap::new();
        for m in monomials(alg, n)? {
            let w = m.weight(p) as i64;
            for i in [w, w + 1] {
                if let std::collections::hash_map::Entry::Vacant(e) = spaces.entry(i) {
                    e.insert(filtration_basis(alg, i, n, BasisKind::Admissible)?);
                }
            }
            let x = alg.monomial(m.clone());
            let ok = spaces[&w].contains(alg, &x)? && !spaces[&(w + 1)].contains(alg, &x)?;
            rep.check("level", p, &[("n", n as i64), ("w", w)], ok, || m.to_string());
        }
    }
    Ok(rep)
}

fn e1(alg: &SteenrodAlgebra, r: &Ranges) -> Result<Report> {
    let p = alg.p();
    let mut rep = Report::new();
    for i in (*r.levels.start()).min(0)..=0 {
        for n in 0..=r.max_degree {
            let f = filtration_basis(alg, i, n, BasisKind::Admissible)?;
            rep.check("e1", p, &[("i", i), ("n", n as i64)], f.dim() == f.ambient_dim(), || {
                format!("dim {} of {}", f.dim(), f.ambient_dim())
            });
        }
    }
    Ok(rep)
}

fn e2(alg: &SteenrodAlgebra, r: &Ranges) -> Result<Report> {
    let p = alg.p();
    let mut rep = Report::new();
    for n in 0..=r.max_degree {
        let f = filtration_basis(alg, n as i64 + 1, n, BasisKind::Admissible)?;
        rep.check("e2", p, &[("n", n as i64)], f.dim() == 0, || {
            format!("F_{}^{n} has dim {}", n + 1, f.dim())
        });
    }
    Ok(rep)
}

fn e3(alg: &SteenrodAlgebra, r: &Ranges) -> Result<Report> {
    let p = alg.p();
    alg.ctx().check_degree(2 * r.max_degree)?;
    let mut rep = Report::new();
    for i in r.levels.clone() {
        for d2 in 0..=r.max_degree {
            let xs: Vec<_> = monomials(alg, d2)?
                .into_iter()
                .filter(|m| m.weight(p) as i64 >= i)
                .collect();
            for d1 in 0..=r.max_degree {
                let mut bad = None;
                'cell: for a in monomials(alg, d1)? {
                    for x in &xs {
                        if !in_level(p, &alg.multiply_monomials(&a, x), i) {
                            bad = Some(format!("{a} * {x}"));
                            break 'cell;
                        }
                    }
                }
                let idx = [("i", i), ("left", d1 as i64), ("right", d2 as i64)];
                rep.check("e3", p, &idx, bad.is_none(), || bad.clone().unwrap());
            }
        }
    }
    Ok(rep)
}

fn e4(alg: &SteenrodAlgebra, r: &Ranges) -> Result<Report> {
    let p = alg.p();
    alg.ctx().check_degree(2 * r.max_degree)?;
    let mut rep = Report::new();
    for i in r.levels.clone() {
        for d1 in 0..=r.max_degree {
            let xs: Vec<_> = monomials(alg, d1)?
                .into_iter()
                .filter(|m| m.weight(p) as i64 >= i)
                .collect();
            for j in 0..=r.max_degree {
                let mut bad = None;
                'cell: for x in &xs {
                    for a in monomials(alg, j)? {
                        if !in_level(p, &alg.multiply_monomials(x, &a), i - j as i64) {
                            bad = Some(format!("{x} * {a}"));
                            break 'cell;
                        }
                    }
                }
                let idx = [("i", i), ("left", d1 as i64), ("j", j as i64)];
                rep.check("e4", p, &idx, bad.is_none(), || bad.clone().unwrap());
            }
        }
    }
    Ok(rep)
}

fn e5(alg: &SteenrodAlgebra, r: &Ranges) -> Result<Report> {
    let p = alg.p();
    let mut rep = Report::new();
    for i in r.levels.clone() {
        for n in 0..=r.max_degree {
            let mut bad = None;
            for x in monomials(alg, n)? {
                if (x.weight(p) as i64) < i {
                    continue;
                }
                let d = alg.coproduct(&alg.monomial(x.clone()))?;
                let low = d.keys().find(|(u, v)| ((u.weight(p) + v.weight(p)) as i64) < i);
                if let Some((u, v)) = low {
                    bad = Some(format!("{x} has term {u} ⊗ {v}"));
                    break;
                }
            }
            rep.check("e5", p, &[("i", i), ("n", n as i64)], bad.is_none(), || bad.clone().unwrap());
        }
    }
    Ok(rep)
}

/// dim E_i^j from admissible words.
fn e_dim_by_words(p: u32, i: i64, j: u32) -> usize {
    filtration_dim_by_words(p, i, j) - filtration_dim_by_words(p, i + 1, j)
}

fn top_residue(p: u32, i: i64, j: u32) -> bool {
    let m = (i + j as i64).rem_euclid(2 * p as i64);
    m == 0 || m == 2
}

fn e6(alg: &SteenrodAlgebra, r: &Ranges) -> Result<Report> {
    let p = alg.p();
    let mut rep = Report::new();
    for l in r.levels.clone().filter(|&l| l >= 0) {
        let top = top_degree(p, l as u32);
        for k in 0..=r.max_degree {
            if k >= top && top_residue(p, l, k) {
                continue;
            }
            let d = e_dim_by_words(p, l, k);
            rep.check("e6", p, &[("level", l), ("k", k as i64)], d == 0, || format!("dim {d}"));
        }
    }
    Ok(rep)
}

fn e7(alg: &SteenrodAlgebra, r: &Ranges) -> Result<Report> {
    let p = alg.p();
    let mut rep = Report::new();
    for l in r.levels.clone().filter(|&l| l >= 0) {
        let top = top_degree(p, l as u32);
        if top > alg.ctx().degree_cap() {
            continue;
        }
        let d = e_dim_by_words(p, l, top);
        let g = word_to_milnor(alg, &top_word(p, l as u32))?;
        let ok = d == 1 && g == alg.monomial(top_generator(p, l as u32));
        rep.check("e7", p, &[("level", l), ("k", top as i64)], ok, || {
            format!("dim {d}, generator {g}")
        });
    }
    Ok(rep)
}

/// Levels L and shifts j with top(L) + j <= max_degree.
fn mu_tilde_cells(p: u32, max_degree: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut l = 0;
    while top_degree(p, l) <= max_degree {
        for j in 0..=max_degree - top_degree(p, l) {
            out.push((l, j));
        }
        l += 1;
    }
    out
}

fn a5(alg: &SteenrodAlgebra, r: &Ranges, name: &str) -> Result<Report> {
    let p = alg.p();
    let mut rep = Report::new();
    for (l, j) in mu_tilde_cells(p, r.max_degree) {
        let mt = mu_tilde_matrix(alg, l, j)?;
        let ok = mt.matrix.is_square() && mt.is_invertible();
        rep.check(name, p, &[("level", l as i64), ("j", j as i64)], ok, || {
            format!("{}x{} of rank {}", mt.matrix.rows(), mt.matrix.cols(), mt.matrix.rank())
        });
    }
    Ok(rep)
}

/// All gamma indices whose composite lands in degree <= max_degree.
fn gamma_cells(p: u32, max_degree: u32) -> Vec<GammaIndex> {
    let mut out = Vec::new();
    for (l, j) in mu_tilde_cells(p, max_degree) {
        if j <= l {
            let (i, e) = (l / 2, l % 2);
            out.push(GammaIndex::new(p, i, j, e).expect("j <= level"));
        }
    }
    out
}

fn e9(alg: &SteenrodAlgebra, r: &Ranges) -> Result<Report> {
    let p = alg.p();
    let mut rep = Report::new();
    for idx in gamma_cells(p, r.max_degree) {
        let mt = mu_tilde(alg, idx.target_level, idx.shift)?;
        let mut bad = None;
        for theta in monomials(alg, idx.theta_degree)? {
            let k = theta.weight(p) as i64;
            let phi = gamma_with(alg, &mt, &idx, &alg.monomial(theta.clone()))?;
            if !in_level(p, &phi, ceil_div(k, p)) {
                bad = Some(format!("{theta} -> {phi}"));
                break;
            }
        }
        let cell = [("source", idx.source_level as i64), ("j", idx.shift as i64)];
        rep.check("e9", p, &cell, bad.is_none(), || bad.clone().unwrap());
    }
    Ok(rep)
}

fn fil1(alg: &SteenrodAlgebra, r: &Ranges) -> Result<Report> {
    let p = alg.p();
    let cap = alg.ctx().degree_cap();
    let mut rep = Report::new();
    let max_level = (*r.levels.end()).max(0) as u32;
    for l in 0..=max_level {
        let top = top_degree(p, l);
        for k in 0..top.min(cap + 1) {
            let d = filtration_dim_by_words(p, l as i64, k);
            rep.check("fil1", p, &[("part", 1), ("level", l as i64), ("k", k as i64)], d == 0, || {
                format!("dim {d}")
            });
        }
        if top <= cap {
            let words: Vec<Word> = admissible_words(p, top)
                .into_iter()
                .filter(|w| w.excess(p) >= l as i64)
                .collect();
            let ok = words == [top_word(p, l)];
            rep.check("fil1", p, &[("part", 2), ("level", l as i64), ("k", top as i64)], ok, || {
                format!("{words:?}")
            });
        }
        for j in 0..=r.max_degree {
            if top_residue(p, l as i64, j) {
                continue;
            }
            let d = e_dim_by_words(p, l as i64, j);
            rep.check("fil1", p, &[("part", 3), ("level", l as i64), ("k", j as i64)], d == 0, || {
                format!("dim {d}")
            });
        }
    }
    Ok(rep)
}

fn random_word(rng: &mut ChaCha8Rng, p: u32, max_degree: u32) -> Word {
    loop {
        let len = rng.gen_range(1..=4usize);
        let exps: Vec<u32> = (0..len).map(|_| rng.gen_range(0..=max_degree.min(12))).collect();
        let w = if p == 2 {
            Word::even(exps)
        } else {
            let eps = (0..=len).map(|_| rng.gen_range(0..=1u8)).collect();
            Word::odd(eps, exps)
        };
        if w.degree(p) <= max_degree {
            return w;
        }
    }
}

fn fil2(alg: &SteenrodAlgebra, r: &Ranges) -> Result<Report> {
    let p = alg.p();
    let mut rng = ChaCha8Rng::seed_from_u64(r.seed);
    let mut rep = Report::new();
    for k in 0..r.samples {
        let w = random_word(&mut rng, p, r.max_degree);
        let x = word_to_milnor(alg, &w)?;
        let ok = in_level(p, &x, w.excess(p));
        rep.check("fil2", p, &[("sample", k as i64), ("excess", w.excess(p))], ok, || {
            format!("{w} -> {x}")
        });
    }
    Ok(rep)
}

fn p_seq(first: i64, rest: &Seq) -> Option<Seq> {
    let first = u32::try_from(first).ok()?;
    Some(rest.shift().add(&Seq::new(vec![first])))
}

fn cong1(alg: &SteenrodAlgebra, r: &Ranges) -> Result<Report> {
    let p = alg.p();
    let mut rep = Report::new();
    let eps_range = if p == 2 { 0..=0 } else { 0..=1 };
    for e in eps_range {
        let mut i = 0;
        loop {
            let lead_level = 2 * i + e;
            let lead_deg = if p == 2 { i } else { top_degree(p, lead_level) };
            if lead_deg > r.max_degree {
                break;
            }
            let lead = if p == 2 {
                alg.p_power(i)
            } else {
                alg.monomial(top_generator(p, lead_level))
            };
            for j in 0..=r.max_degree - lead_deg {
                // the inequality bound on the weight, and the congruence level
                let (bound, modulus) = if p == 2 {
                    (i as i64 - j as i64, i as i64 - j as i64 + 1)
                } else {
                    (2 * i as i64 - j as i64 + 1, 2 * i as i64 - j as i64 + e as i64 + 1)
                };
                let mut bad = None;
                let mut checked = 0;
                for m in monomials(alg, j)? {
                    let w = m.weight(p) as i64;
                    if w > bound {
                        continue;
                    }
                    checked += 1;
                    let x = alg.multiply(&lead, &alg.monomial(m.clone()))?;
                    let predicted = if p == 2 {
                        p_seq(i as i64 - j as i64 - m.r.total() as i64, &m.r)
                            .map(|s| MilnorMonomial::new(BSeq::zero(), s))
                    } else {
                        let ee = m.e.total() as i64;
                        let twice = ee + j as i64;
                        let mut flags = vec![e as u8];
                        flags.extend_from_slice(m.e.entries());
                        if twice % 2 != 0 {
                            None
                        } else {
                            p_seq(i as i64 - twice / 2 - m.r.total() as i64, &m.r)
                                .map(|s| MilnorMonomial::new(BSeq::new(flags), s))
                        }
                    };
                    let ok = match &predicted {
                        Some(q) => in_level(p, &x.minus(&alg.monomial(q.clone())), modulus),
                        None => false,
                    };
                    if !ok {
                        bad = Some(format!("{m}: product {x}, predicted {predicted:?}"));
                        break;
                    }
                }
                let idx = [("e", e as i64), ("i", i as i64), ("j", j as i64), ("inputs", checked)];
                rep.check("cong1", p, &idx, bad.is_none(), || bad.clone().unwrap());
            }
            i += 1;
        }
    }
    Ok(rep)
}

/// Q_n P((j - c) E_1 + s(S)) as a monomial, when j >= c.
fn shifted(q: Option<usize>, j: u32, c: u32, s: &Seq) -> Option<MilnorMonomial> {
    let e = q.map_or(BSeq::zero(), BSeq::unit);
    p_seq(j as i64 - c as i64, s).map(|r| MilnorMonomial::new(e, r))
}

/// R - E_n for the unique n >= 1 with p | R - E_n, if any.
fn minus_unit_divisible(p: u32, r: &Seq) -> Option<(usize, Seq)> {
    (1..=r.len()).find_map(|n| {
        let s = r.checked_sub(&Seq::unit(n))?;
        s.divisible_by(p).then_some((n, s))
    })
}

fn cong2(alg: &SteenrodAlgebra, r: &Ranges) -> Result<Report> {
    let p = alg.p();
    let name = if p == 2 { "cong22" } else { "cong2" };
    let mut rep = Report::new();
    let step = if p == 2 { 1 } else { 2 * (p - 1) };
    let mut j = 0;
    while j * step <= r.max_degree {
        let parts: &[u32] = if p == 2 { &[1] } else { &[1, 2] };
        for &part in parts {
            let with_beta = part == 2;
            let right = if with_beta {
                alg.monomial(MilnorMonomial::from_parts(vec![1], vec![j]))
            } else {
                alg.p_power(j)
            };
            let right_deg = j * step + u32::from(with_beta);
            if right_deg > r.max_degree {
                continue;
            }
            let modulus = if p == 2 { j as i64 + 1 } else { 2 * j as i64 + 1 + i64::from(with_beta) };
            let mut bad = None;
            let mut checked = 0;
            for d in 0..=r.max_degree - right_deg {
                for m in monomials(alg, d)? {
                    checked += 1;
                    let x = alg.multiply(&alg.monomial(m.clone()), &right)?;
                    let size = m.r.total();
                    let predicted = if !m.e.is_empty() {
                        None
                    } else if !with_beta {
                        (size <= p * j && m.r.divisible_by(p))
                            .then(|| shifted(None, j, size / p, &m.r.div(p)))
                            .flatten()
                    } else if size > p * j + 1 {
                        None
                    } else if m.r.divisible_by(p) {
                        shifted(Some(0), j, size / p, &m.r.div(p))
                    } else {
                        minus_unit_divisible(p, &m.r)
                            .and_then(|(n, s)| shifted(Some(n), j, (size - 1) / p, &s.div(p)))
                    };
                    let diff = match &predicted {
                        Some(q) => x.minus(&alg.monomial(q.clone())),
                        None => x.clone(),
                    };
                    if !in_level(p, &diff, modulus) {
                        bad = Some(format!("{m}: product {x}, predicted {predicted:?}"));
                        break;
                    }
                }
            }
            let idx = [("part", part as i64), ("j", j as i64), ("inputs", checked)];
            rep.check(name, p, &idx, bad.is_none(), || bad.clone().unwrap());
        }
        j += 1;
    }
    Ok(rep)
}

fn cong3(alg: &SteenrodAlgebra, r: &Ranges) -> Result<Report> {
    let p = alg.p();
    let name = if p == 2 { "cong32" } else { "cong3" };
    let mut rep = Report::new();
    let step = if p == 2 { 1 } else { 2 * (p - 1) };
    let mut j = 0;
    while j * step <= r.max_degree {
        let parts: &[u32] = if p == 2 { &[1] } else { &[1, 2] };
        for &part in parts {
            let with_beta = part == 2;
            let right = if with_beta {
                alg.monomial(MilnorMonomial::from_parts(vec![1], vec![j]))
            } else {
                alg.p_power(j)
            };
            let right_deg = j * step + u32::from(with_beta);
            if right_deg > r.max_degree {
                continue;
            }
            let modulus = if p == 2 { j as i64 + 1 } else { 2 * j as i64 + 1 + i64::from(with_beta) };
            let mut bad = None;
            let mut checked = 0;
            for k in 0..=r.max_degree - right_deg {
                for m in monomials(alg, k)? {
                    if !m.e.is_empty() {
                        continue;
                    }
                    let size = m.r.total();
                    let bound = p * j + u32::from(with_beta);
                    if size > bound {
                        continue;
                    }
                    // P^a followed by the tail, as a product
                    let predicted = if m.r.divisible_by(p) {
                        let a = if p == 2 { j + k / 2 } else { j + k / (2 * p) };
                        let tail = alg.monomial(MilnorMonomial::from_r(m.r.div(p).entries().to_vec()));
                        let head = if with_beta {
                            alg.multiply(&alg.bockstein(), &alg.p_power(a))?
                        } else {
                            alg.p_power(a)
                        };
                        Some(alg.multiply(&head, &tail)?)
                    } else if with_beta {
                        match minus_unit_divisible(p, &m.r) {
                            Some((n, s)) => {
                                let a = j + (k + 2) / (2 * p);
                                let tail = alg.monomial(MilnorMonomial::new(BSeq::unit(n - 1), s.div(p)));
                                Some(alg.multiply(&alg.p_power(a), &tail)?)
                            }
                            None => None,
                        }
                    } else {
                        None
                    };
                    let Some(predicted) = predicted else { continue };
                    checked += 1;
                    let x = alg.multiply(&alg.monomial(m.clone()), &right)?;
                    if !in_level(p, &x.minus(&predicted), modulus) {
                        bad = Some(format!("{m}: product {x}, predicted {predicted}"));
                        break;
                    }
                }
            }
            let idx = [("part", part as i64), ("j", j as i64), ("inputs", checked)];
            rep.check(name, p, &idx, bad.is_none(), || bad.clone().unwrap());
        }
        j += 1;
    }
    Ok(rep)
}

fn cong4(alg: &SteenrodAlgebra, r: &Ranges) -> Result<Report> {
    if alg.p() == 2 {
        cong42(alg, r)
    } else {
        cong4_odd(alg, r)
    }
}

fn cong42(alg: &SteenrodAlgebra, r: &Ranges) -> Result<Report> {
    let mut rep = Report::new();
    for idx in gamma_cells(2, r.max_degree) {
        let mt = mu_tilde(alg, idx.target_level, idx.shift)?;
        let quotient = idx.source_level as i64 + 1;
        let mut bad = None;
        for theta in monomials(alg, idx.theta_degree)? {
            let phi = gamma_with(alg, &mt, &idx, &alg.monomial(theta.clone()))?;
            let expected = project_below(2, &pth_root_monomial(2, &theta), quotient);
            if phi != expected {
                bad = Some(format!("{theta}: gamma {phi}, root {expected}"));
                break;
            }
        }
        let cell = [("source", idx.source_level as i64), ("j", idx.shift as i64)];
        rep.check("cong42", 2, &cell, bad.is_none(), || bad.clone().unwrap());
    }
    Ok(rep)
}

fn cong4_odd(alg: &SteenrodAlgebra, r: &Ranges) -> Result<Report> {
    let p = alg.p();
    let mut rep = Report::new();
    let mut strict_agree = 0i64;
    let mut strict_differ = 0i64;
    let mut first_difference = None;
    for idx in gamma_cells(p, r.max_degree) {
        let (source, shift) = (idx.source_level, idx.shift);
        let i = source / 2;
        let mt = mu_tilde(alg, idx.target_level, shift)?;
        let cell = [("source", source as i64), ("j", shift as i64)];
        let mut bad = None;
        if shift % 2 == 0 {
            // part (1): theta in A^{2jp}
            for theta in monomials(alg, idx.theta_degree)? {
                let phi = gamma_with(alg, &mt, &idx, &alg.monomial(theta.clone()))?;
                let root = pth_root_monomial(p, &theta);
                let lhs = project_below(p, &phi, 2 * i as i64 + 1);
                let rhs = project_below(p, &root, 2 * i as i64 + 1);
                if lhs != rhs {
                    bad = Some(format!("{theta}: gamma {phi}, root {root}"));
                    break;
                }
                if phi == project_below(p, &root, source as i64 + 1) {
                    strict_agree += 1;
                } else {
                    strict_differ += 1;
                    first_difference.get_or_insert_with(|| format!("{theta} at source {source}: {phi} vs {root}"));
                }
            }
        } else if source % 2 == 0 {
            // part (2): odd shift onto an odd level is trivial
            for theta in monomials(alg, idx.theta_degree)? {
                let phi = gamma_with(alg, &mt, &idx, &alg.monomial(theta.clone()))?;
                if !phi.is_zero() {
                    bad = Some(format!("{theta}: gamma {phi}"));
                    break;
                }
            }
        } else {
            // part (3): F_{kp+2} goes into F_{k+1}
            for theta in monomials(alg, idx.theta_degree)? {
                let w = theta.weight(p) as i64;
                if w < 2 {
                    continue;
                }
                let k = (w - 2) / p as i64;
                let phi = gamma_with(alg, &mt, &idx, &alg.monomial(theta.clone()))?;
                if !in_level(p, &phi, k + 1) {
                    bad = Some(format!("{theta} (k = {k}): gamma {phi}"));
                    break;
                }
            }
        }
        rep.check("cong4", p, &cell, bad.is_none(), || bad.clone().unwrap());
    }
    rep.note(
        "cong4",
        p,
        &[("strict_agree", strict_agree), ("strict_differ", strict_differ)],
        match first_difference {
            Some(d) => format!("comparison modulo F_(2i+e+1) differs, first at {d}"),
            None => "comparison modulo F_(2i+e+1) also holds".to_string(),
        },
    );
    Ok(rep)
}
