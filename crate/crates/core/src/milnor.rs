//! Products, coproducts and the p-th root map in the Milnor basis.

use crate::combination::Combination;
use crate::error::{Error, Result};
use crate::field::{multinomial_mod_p, PrimeContext};
use crate::monomial::MilnorMonomial;
use crate::seq::{BSeq, Seq};

pub type Element = Combination<MilnorMonomial>;
pub type TensorElement = Combination<(MilnorMonomial, MilnorMonomial)>;

/// Product of two Milnor basis monomials.
pub fn product_monomials(p: u32, a: &MilnorMonomial, b: &MilnorMonomial) -> Element {
    if p == 2 {
        let mut out = Element::zero(p);
        for (t, c) in milnor_matrix_product(p, &a.r, &b.r) {
            out.add_term(MilnorMonomial::new(BSeq::zero(), t), c);
        }
        return out;
    }

    // Move each Q_k of the right factor leftwards through P(R) using
    // P(R) Q_k = sum_j Q_{k+j} P(R - p^k E_j), keeping the Q list sorted.
    let mut partial: Vec<(Vec<usize>, Seq, u32)> = vec![(a.e.indices(), a.r.clone(), 1)];
    for k in b.e.indices() {
        let mut next = Vec::new();
        for (qs, r, c) in &partial {
            for j in 0..=r.len() {
                let idx = k + j;
                if qs.contains(&idx) {
                    continue;
                }
                let r_new = if j == 0 {
                    r.clone()
                } else {
                    let pk = p.pow(k as u32);
                    if r.get(j) < pk {
                        continue;
                    }
                    r.with(j, r.get(j) - pk)
                };
                let larger = qs.iter().filter(|&&x| x > idx).count();
                let mut q_new = qs.clone();
                q_new.push(idx);
                q_new.sort_unstable();
                let sign = if larger % 2 == 0 { *c } else { (p - *c) % p };
                next.push((q_new, r_new, sign));
            }
        }
        partial = next;
    }

    let mut out = Element::zero(p);
    for (qs, r, c) in partial {
        let e = BSeq::from_indices(&qs);
        for (t, coeff) in milnor_matrix_product(p, &r, &b.r) {
            out.add_term(MilnorMonomial::new(e.clone(), t), c * coeff % p);
        }
    }
    out
}

/// P(R) P(S) as a list of (T, coefficient) with nonzero coefficients, via
/// Milnor matrices: sum_j p^j x_ij = r_i, sum_i x_ij = s_j.
pub fn milnor_matrix_product(p: u32, r: &Seq, s: &Seq) -> Vec<(Seq, u32)> {
    let rows = r.len();
    let cols = s.len();
    let r_entries: Vec<u32> = r.entries().to_vec();
    let s_entries: Vec<u32> = s.entries().to_vec();
    // x[i][j] for 0 <= i <= rows, 0 <= j <= cols; x[0][0] unused.
    let mut x = vec![vec![0u32; cols + 1]; rows + 1];
    let mut col_left = s_entries.clone();
    let mut results: Vec<(Seq, u32)> = Vec::new();
    let pows: Vec<u32> = (0..=cols as u32).map(|j| p.pow(j)).collect();

    #[allow(clippy::too_many_arguments)]
    fn recurse(
        p: u32,
        i: usize,
        j: usize,
        row_left: u32,
        rows: usize,
        cols: usize,
        r_entries: &[u32],
        pows: &[u32],
        x: &mut Vec<Vec<u32>>,
        col_left: &mut Vec<u32>,
        results: &mut Vec<(Seq, u32)>,
    ) {
        if i > rows {
            for jj in 1..=cols {
                x[0][jj] = col_left[jj - 1];
            }
            if let Some(found) = evaluate(p, x, rows, cols) {
                results.push(found);
            }
            return;
        }
        if j > cols {
            x[i][0] = row_left;
            let next_budget = if i < rows { r_entries[i] } else { 0 };
            recurse(p, i + 1, 1, next_budget, rows, cols, r_entries, pows, x, col_left, results);
            return;
        }
        let max = (row_left / pows[j]).min(col_left[j - 1]);
        for v in 0..=max {
            x[i][j] = v;
            col_left[j - 1] -= v;
            recurse(
                p,
                i,
                j + 1,
                row_left - v * pows[j],
                rows,
                cols,
                r_entries,
                pows,
                x,
                col_left,
                results,
            );
            col_left[j - 1] += v;
        }
        x[i][j] = 0;
    }

    fn evaluate(p: u32, x: &[Vec<u32>], rows: usize, cols: usize) -> Option<(Seq, u32)> {
        let mut coeff = 1u32;
        let mut t = Vec::with_capacity(rows + cols);
        let mut diag = Vec::new();
        for n in 1..=rows + cols {
            diag.clear();
            for i in 0..=n.min(rows) {
                let j = n - i;
                if j <= cols {
                    diag.push(x[i][j]);
                }
            }
            let c = multinomial_mod_p(&diag, p);
            if c == 0 {
                return None;
            }
            coeff = coeff * c % p;
            t.push(diag.iter().sum());
        }
        Some((Seq::new(t), coeff))
    }

    let first = if rows > 0 { r_entries[0] } else { 0 };
    recurse(
        p,
        1,
        1,
        first,
        rows,
        cols,
        &r_entries,
        &pows,
        &mut x,
        &mut col_left,
        &mut results,
    );
    results
}

/// Bilinear product of elements, without caching or cap checks.
pub fn product_raw(a: &Element, b: &Element) -> Element {
    let p = a.prime();
    a.bilinear(b, |x, y| product_monomials(p, x, y))
}

/// Coproduct of a Milnor basis monomial.
pub fn coproduct_monomial(p: u32, m: &MilnorMonomial) -> TensorElement {
    let qs = m.e.indices();
    let mut out = TensorElement::zero(p);
    let r_splits = split_seq(&m.r);
    for mask in 0u32..(1 << qs.len()) {
        let left: Vec<usize> = (0..qs.len()).filter(|&k| mask >> k & 1 == 1).map(|k| qs[k]).collect();
        let right: Vec<usize> = (0..qs.len()).filter(|&k| mask >> k & 1 == 0).map(|k| qs[k]).collect();
        let inversions = shuffle_sign(&left, &right);
        let sign = if inversions % 2 == 0 { 1 } else { p - 1 };
        let e1 = BSeq::from_indices(&left);
        let e2 = BSeq::from_indices(&right);
        for (s, t) in &r_splits {
            out.add_term(
                (MilnorMonomial::new(e1.clone(), s.clone()), MilnorMonomial::new(e2.clone(), t.clone())),
                sign,
            );
        }
    }
    out
}

/// Number of pairs (a in left, b in right) with a > b.
pub fn shuffle_sign(left: &[usize], right: &[usize]) -> usize {
    left.iter().map(|&a| right.iter().filter(|&&b| a > b).count()).sum()
}

/// All (S, T) with S + T = R.
pub fn split_seq(r: &Seq) -> Vec<(Seq, Seq)> {
    let mut out = vec![(Vec::new(), Vec::new())];
    for &x in r.entries() {
        let mut next = Vec::with_capacity(out.len() * (x as usize + 1));
        for (s, t) in &out {
            for a in 0..=x {
                let mut s2: Vec<u32> = s.clone();
                let mut t2: Vec<u32> = t.clone();
                s2.push(a);
                t2.push(x - a);
                next.push((s2, t2));
            }
        }
        out = next;
    }
    out.into_iter().map(|(s, t)| (Seq::new(s), Seq::new(t))).collect()
}

pub fn coproduct_raw(a: &Element) -> TensorElement {
    let p = a.prime();
    a.linear_map(|m| coproduct_monomial(p, m))
}

/// Product in the graded tensor square: (a ⊗ b)(c ⊗ d) = (-1)^{|b||c|} ac ⊗ bd.
pub fn tensor_product(
    p: u32,
    x: &TensorElement,
    y: &TensorElement,
    mul: impl Fn(&MilnorMonomial, &MilnorMonomial) -> Element,
) -> TensorElement {
    let mut out = TensorElement::zero(p);
    for ((a, b), u) in x.iter() {
        for ((c, d), v) in y.iter() {
            let sign = if (b.degree(p) * c.degree(p)) % 2 == 1 { p - 1 } else { 1 };
            let ac = mul(a, c);
            let bd = mul(b, d);
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

/// The p-th root map: Q(E)P(R) goes to P(R/p) when E = 0 and p | R, otherwise to 0.
/// The input must be homogeneous of degree divisible by p.
pub fn pth_root(ctx: &PrimeContext, a: &Element) -> Result<Element> {
    let p = ctx.p();
    if let Some(d) = a.require_homogeneous()? {
        ctx.check_degree(d)?;
        if d % p != 0 {
            return Err(Error::BadDegree {
                degree: d,
                expected: format!("a multiple of {p}"),
            });
        }
    }
    Ok(a.linear_map(|m| pth_root_monomial(p, m)))
}

pub fn pth_root_monomial(p: u32, m: &MilnorMonomial) -> Element {
    if m.e.is_empty() && m.r.divisible_by(p) {
        Element::monomial(p, MilnorMonomial::new(BSeq::zero(), m.r.div(p)))
    } else {
        Element::zero(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(r: Vec<u32>) -> MilnorMonomial {
        MilnorMonomial::from_r(r)
    }

    #[test]
    fn small_products_mod_2() {
        assert!(product_monomials(2, &sq(vec![1]), &sq(vec![1])).is_zero());
        assert_eq!(
            product_monomials(2, &sq(vec![2]), &sq(vec![2])),
            Element::monomial(2, sq(vec![1, 1]))
        );
        assert_eq!(
            product_monomials(2, &sq(vec![2]), &sq(vec![1])),
            Element::from_terms(2, [(sq(vec![3]), 1), (sq(vec![0, 1]), 1)])
        );
    }

    #[test]
    fn bockstein_commutation() {
        let lhs = product_monomials(3, &sq(vec![1]), &MilnorMonomial::q(0));
        let rhs = Element::from_terms(
            3,
            [
                (MilnorMonomial::from_parts(vec![1], vec![1]), 1),
                (MilnorMonomial::q(1), 1),
            ],
        );
        assert_eq!(lhs, rhs);
        assert!(product_monomials(3, &MilnorMonomial::q(0), &MilnorMonomial::q(0)).is_zero());
        // Q_1 Q_0 = -Q_0 Q_1
        assert_eq!(
            product_monomials(3, &MilnorMonomial::q(1), &MilnorMonomial::q(0)),
            Element::term(3, MilnorMonomial::from_parts(vec![1, 1], vec![]), 2)
        );
    }

    #[test]
    fn coproduct_examples() {
        let d = coproduct_monomial(2, &sq(vec![2]));
        assert_eq!(d.len(), 3);
        assert_eq!(d.coeff(&(sq(vec![1]), sq(vec![1]))), 1);
        let q = coproduct_monomial(3, &MilnorMonomial::q(0));
        assert_eq!(q.coeff(&(MilnorMonomial::q(0), MilnorMonomial::unit())), 1);
        assert_eq!(q.coeff(&(MilnorMonomial::unit(), MilnorMonomial::q(0))), 1);
    }

    #[test]
    fn pth_root_examples() {
        let ctx = PrimeContext::new(3, 60).unwrap();
        let a = Element::monomial(3, sq(vec![3]));
        assert_eq!(pth_root(&ctx, &a).unwrap(), Element::monomial(3, sq(vec![1])));
        let b = Element::monomial(3, MilnorMonomial::from_parts(vec![1], vec![3]));
        assert!(matches!(pth_root(&ctx, &b), Err(Error::BadDegree { .. })));
        let c = Element::monomial(3, MilnorMonomial::from_parts(vec![1, 0, 1], vec![]));
        // degree 1 + 17 = 18
        assert!(pth_root(&ctx, &c).unwrap().is_zero());
        let ctx2 = PrimeContext::new(2, 64).unwrap();
        assert_eq!(
            pth_root(&ctx2, &Element::monomial(2, sq(vec![2]))).unwrap(),
            Element::monomial(2, sq(vec![1]))
        );
    }
}
