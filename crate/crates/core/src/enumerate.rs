//! Degreewise enumeration of Milnor indices and admissible words.

use crate::error::Result;
use crate::field::PrimeContext;
use crate::monomial::{exterior_degree, polynomial_degree, MilnorMonomial};
use crate::seq::{BSeq, Seq};
use crate::word::Word;

/// All (E, R) of degree `n`, sorted lexicographically by E then R.
pub fn milnor_indices(p: u32, n: u32) -> Vec<MilnorMonomial> {
    let mut out = Vec::new();
    if p == 2 {
        for r in polynomial_parts(p, n) {
            out.push(MilnorMonomial::new(BSeq::zero(), r));
        }
    } else {
        let mut ext_weights = Vec::new();
        let mut k = 0;
        while exterior_degree(p, k) <= n {
            ext_weights.push(exterior_degree(p, k));
            k += 1;
        }
        for mask in 0u32..(1 << ext_weights.len()) {
            let used: u32 = (0..ext_weights.len())
                .filter(|&k| mask >> k & 1 == 1)
                .map(|k| ext_weights[k])
                .sum();
            if used > n {
                continue;
            }
            let e = BSeq::new(
                (0..ext_weights.len())
                    .map(|k| (mask >> k & 1) as u8)
                    .collect(),
            );
            for r in polynomial_parts(p, n - used) {
                out.push(MilnorMonomial::new(e.clone(), r));
            }
        }
    }
    out.sort();
    out
}

/// Sequences R with sum_t r_t * deg(xi_t) = m.
pub fn polynomial_parts(p: u32, m: u32) -> Vec<Seq> {
    let mut weights = Vec::new();
    let mut t = 1;
    while polynomial_degree(p, t) <= m {
        weights.push(polynomial_degree(p, t));
        t += 1;
    }
    let mut out = Vec::new();
    let mut current = vec![0u32; weights.len()];
    fill_parts(&weights, weights.len(), m, &mut current, &mut out);
    out
}

fn fill_parts(weights: &[u32], k: usize, remaining: u32, current: &mut Vec<u32>, out: &mut Vec<Seq>) {
    if k == 0 {
        if remaining == 0 {
            out.push(Seq::new(current.clone()));
        }
        return;
    }
    let w = weights[k - 1];
    for c in 0..=remaining / w {
        current[k - 1] = c;
        fill_parts(weights, k - 1, remaining - c * w, current, out);
    }
    current[k - 1] = 0;
}

/// The sequence J with e_k = E_k and j_k = r_k; `varrho` of it is admissible.
pub fn index_to_preimage(p: u32, m: &MilnorMonomial) -> Word {
    if p == 2 {
        Word::even(m.r.entries().to_vec())
    } else {
        let n = m.r.len().max(m.e.len().saturating_sub(1));
        let eps = (0..=n).map(|k| m.e.get(k)).collect();
        let exps = (1..=n).map(|t| m.r.get(t)).collect();
        Word::odd(eps, exps)
    }
}

/// Every admissible word of degree `n`, sorted by descending lexicographic
/// order on the flattened word.
pub fn admissible_words(p: u32, n: u32) -> Vec<Word> {
    let mut out: Vec<Word> = milnor_indices(p, n)
        .iter()
        .map(|m| index_to_preimage(p, m).varrho(p))
        .collect();
    out.sort();
    out
}

pub fn enumerate_milnor_index(ctx: &PrimeContext, n: u32) -> Result<Vec<MilnorMonomial>> {
    ctx.check_degree(n)?;
    Ok(milnor_indices(ctx.p(), n))
}

pub fn enumerate_admissible(ctx: &PrimeContext, n: u32) -> Result<Vec<Word>> {
    ctx.check_degree(n)?;
    Ok(admissible_words(ctx.p(), n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_degrees() {
        let w: Vec<_> = admissible_words(2, 7).iter().map(|w| w.flat()).collect();
        assert_eq!(w, vec![vec![7], vec![6, 1], vec![5, 2], vec![4, 2, 1]]);
        let w: Vec<_> = admissible_words(3, 5).iter().map(|w| w.flat()).collect();
        assert_eq!(w, vec![vec![1, 1, 0], vec![0, 1, 1]]);
        assert_eq!(admissible_words(5, 0), vec![Word::empty(5)]);
        assert_eq!(
            milnor_indices(2, 4),
            vec![MilnorMonomial::from_r(vec![1, 1]), MilnorMonomial::from_r(vec![4])]
        );
        assert_eq!(
            milnor_indices(3, 5),
            vec![
                MilnorMonomial::from_parts(vec![0, 1], vec![]),
                MilnorMonomial::from_parts(vec![1], vec![1]),
            ]
        );
        assert_eq!(milnor_indices(3, 0), vec![MilnorMonomial::unit()]);
    }
}
