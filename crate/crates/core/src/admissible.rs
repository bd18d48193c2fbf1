//! The admissible basis and conversion to and from the Milnor basis.
//!
//! Conversion is pure linear algebra: each admissible word is evaluated as an
//! iterated Milnor product, and the resulting square matrix is inverted.

use std::fs;
use std::path::PathBuf;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::SteenrodAlgebra;
use crate::combination::Combination;
use crate::enumerate::admissible_words;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::milnor::Element;
use crate::monomial::MilnorMonomial;
use crate::word::Word;

pub type AdmissibleElement = Combination<Word>;

const CACHE_FORMAT: &str = "steenrod-change-of-basis/1";

/// Change-of-basis data for one degree: column k of `matrix` is the Milnor
/// expansion of `words[k]`, with rows indexed by `monomials`.
#[derive(Debug, Clone)]
pub struct ChangeOfBasis {
    pub degree: u32,
    pub words: Vec<Word>,
    pub monomials: Vec<MilnorMonomial>,
    pub matrix: Matrix,
    pub inverse: Matrix,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    format: String,
    schema: u32,
    p: u32,
    degree: u32,
    words: Vec<Vec<u32>>,
    milnor: Vec<CacheIndex>,
    matrix: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
struct CacheIndex {
    #[serde(rename = "E")]
    e: Vec<u8>,
    #[serde(rename = "R")]
    r: Vec<u32>,
}

/// Milnor expansion of the composite named by `w` (admissible or not).
pub fn word_to_milnor(alg: &SteenrodAlgebra, w: &Word) -> Result<Element> {
    let p = alg.p();
    alg.ctx().check_degree(w.degree(p))?;
    let mut acc = alg.unit();
    if w.is_odd() {
        if w.eps_at(0) == 1 {
            acc = alg.multiply(&acc, &alg.bockstein())?;
        }
        for s in 1..=w.len() {
            if w.exp_at(s) > 0 {
                acc = alg.multiply(&acc, &alg.p_power(w.exp_at(s)))?;
            }
            if w.eps_at(s) == 1 {
                acc = alg.multiply(&acc, &alg.bockstein())?;
            }
        }
    } else {
        for &j in w.exps() {
            if j > 0 {
                acc = alg.multiply(&acc, &alg.p_power(j))?;
            }
        }
    }
    Ok(acc)
}

pub fn change_of_basis(alg: &SteenrodAlgebra, n: u32) -> Result<Arc<ChangeOfBasis>> {
    alg.ctx().check_degree(n)?;
    if let Some(c) = alg.change_of_basis.read().unwrap().get(&n) {
        return Ok(c.clone());
    }
    let cob = match load_cached(alg, n) {
        Some(c) => c,
        None => {
            let c = compute_change_of_basis(alg, n)?;
            store_cached(alg, &c);
            c
        }
    };
    let cob = Arc::new(cob);
    alg.change_of_basis.write().unwrap().insert(n, cob.clone());
    Ok(cob)
}

fn compute_change_of_basis(alg: &SteenrodAlgebra, n: u32) -> Result<ChangeOfBasis> {
    let p = alg.p();
    let words = admissible_words(p, n);
    let basis = alg.basis(n)?;
    let columns = words
        .iter()
        .map(|w| alg.to_vector(&word_to_milnor(alg, w)?, n))
        .collect::<Result<Vec<_>>>()?;
    let matrix = Matrix::from_columns(p, basis.dim(), &columns);
    finish(n, words, basis.monomials.clone(), matrix)
}

fn finish(
    n: u32,
    words: Vec<Word>,
    monomials: Vec<MilnorMonomial>,
    matrix: Matrix,
) -> Result<ChangeOfBasis> {
    let rank = matrix.rank();
    if words.len() != monomials.len() || rank < monomials.len() {
        return Err(Error::BasisTheoremViolated {
            degree: n,
            rank,
            dim: monomials.len().max(words.len()),
        });
    }
    let inverse = matrix.inverse()?;
    Ok(ChangeOfBasis {
        degree: n,
        words,
        monomials,
        matrix,
        inverse,
    })
}

fn cache_path(alg: &SteenrodAlgebra, n: u32) -> Option<PathBuf> {
    alg.cache_dir()
        .map(|d| d.join(format!("change-of-basis-p{}-n{}.json", alg.p(), n)))
}

fn load_cached(alg: &SteenrodAlgebra, n: u32) -> Option<ChangeOfBasis> {
    let path = cache_path(alg, n)?;
    let text = fs::read_to_string(path).ok()?;
    let file: CacheFile = serde_json::from_str(&text).ok()?;
    let p = alg.p();
    if file.format != CACHE_FORMAT || file.p != p || file.degree != n {
        return None;
    }
    let words = admissible_words(p, n);
    let basis = alg.basis(n).ok()?;
    let stored_words: Vec<Vec<u32>> = words.iter().map(|w| w.flat()).collect();
    let stored_milnor: Vec<(Vec<u8>, Vec<u32>)> = file
        .milnor
        .iter()
        .map(|c| (c.e.clone(), c.r.clone()))
        .collect();
    let expected_milnor: Vec<(Vec<u8>, Vec<u32>)> = basis
        .monomials
        .iter()
        .map(|m| (m.e.entries().to_vec(), m.r.entries().to_vec()))
        .collect();
    if stored_words != file.words || stored_milnor != expected_milnor {
        return None;
    }
    if file.matrix.len() != basis.dim() || file.matrix.iter().any(|r| r.len() != words.len()) {
        return None;
    }
    let matrix = Matrix::from_rows(p, words.len(), &file.matrix);
    finish(n, words, basis.monomials.clone(), matrix).ok()
}

fn store_cached(alg: &SteenrodAlgebra, c: &ChangeOfBasis) {
    let Some(path) = cache_path(alg, c.degree) else {
        return;
    };
    let file = CacheFile {
        format: CACHE_FORMAT.to_string(),
        schema: 1,
        p: alg.p(),
        degree: c.degree,
        words: c.words.iter().map(|w| w.flat()).collect(),
        milnor: c
            .monomials
            .iter()
            .map(|m| CacheIndex {
                e: m.e.entries().to_vec(),
                r: m.r.entries().to_vec(),
            })
            .collect(),
        matrix: c.matrix.to_rows(),
    };
    // The cache is an optimisation; failing to write it is not an error.
    if let Some(dir) = path.parent() {
        let _ = fs::create_dir_all(dir);
    }
    if let Ok(text) = serde_json::to_string(&file) {
        let tmp = path.with_extension("json.tmp");
        if fs::write(&tmp, text).is_ok() {
            let _ = fs::rename(&tmp, &path);
        }
    }
}

/// Expansion of a homogeneous element in the admissible basis.
pub fn milnor_to_admissible(alg: &SteenrodAlgebra, a: &Element) -> Result<AdmissibleElement> {
    let p = alg.p();
    let Some(n) = a.require_homogeneous()? else {
        return Ok(AdmissibleElement::zero(p));
    };
    let cob = change_of_basis(alg, n)?;
    let v = alg.to_vector(a, n)?;
    let x = cob.inverse.mul_vec(&v);
    Ok(AdmissibleElement::from_terms(
        p,
        cob.words.iter().cloned().zip(x).filter(|(_, c)| *c != 0),
    ))
}

/// Milnor expansion of an admissible-basis element.
pub fn admissible_to_milnor(alg: &SteenrodAlgebra, a: &AdmissibleElement) -> Result<Element> {
    let mut out = Element::zero(alg.p());
    for (w, c) in a.iter() {
        out.add_scaled(&word_to_milnor(alg, w)?, c);
    }
    Ok(out)
}

/// Admissible expansion of an arbitrary word. Every term's excess is checked
/// against the excess of the input word.
pub fn rewrite_word(alg: &SteenrodAlgebra, w: &Word) -> Result<AdmissibleElement> {
    let p = alg.p();
    let a = word_to_milnor(alg, w)?;
    let out = if a.is_zero() {
        AdmissibleElement::zero(p)
    } else {
        milnor_to_admissible(alg, &a)?
    };
    let e = w.excess(p);
    if let Some((bad, _)) = out.iter().find(|(t, _)| t.excess(p) < e) {
        return Err(Error::Invalid(format!(
            "rewriting {w} produced {bad} of excess {} below {e}",
            bad.excess(p)
        )));
    }
    Ok(out)
}

/// Smallest excess among the terms: the largest i with `a` in F_i.
pub fn element_excess(p: u32, a: &AdmissibleElement) -> Result<i64> {
    a.keys().map(|w| w.excess(p)).min().ok_or(Error::ZeroElement)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(p: u32) -> SteenrodAlgebra {
        SteenrodAlgebra::with_prime(p).unwrap()
    }

    #[test]
    fn words_to_milnor() {
        let a = alg(2);
        let x = word_to_milnor(&a, &Word::even(vec![2, 1])).unwrap();
        assert_eq!(
            x,
            Element::from_terms(2, [(MilnorMonomial::from_r(vec![3]), 1), (MilnorMonomial::from_r(vec![0, 1]), 1)])
        );
        let b = alg(3);
        let beta = word_to_milnor(&b, &Word::odd(vec![1], vec![])).unwrap();
        assert_eq!(beta, b.bockstein());
    }

    #[test]
    fn conversions() {
        let a = alg(2);
        let x = milnor_to_admissible(&a, &a.monomial(MilnorMonomial::from_r(vec![0, 1]))).unwrap();
        assert_eq!(
            x,
            AdmissibleElement::from_terms(2, [(Word::even(vec![3]), 1), (Word::even(vec![2, 1]), 1)])
        );
        let r = rewrite_word(&a, &Word::even(vec![2, 2])).unwrap();
        assert_eq!(r, AdmissibleElement::monomial(2, Word::even(vec![3, 1])));
        assert!(rewrite_word(&a, &Word::even(vec![1, 1])).unwrap().is_zero());
        assert_eq!(element_excess(2, &r).unwrap(), 2);
        assert_eq!(element_excess(2, &AdmissibleElement::zero(2)), Err(Error::ZeroElement));
    }

    #[test]
    fn small_matrices() {
        let a = alg(2);
        assert!(change_of_basis(&a, 1).unwrap().matrix.is_identity());
        assert_eq!(change_of_basis(&a, 7).unwrap().matrix.rows(), 4);
        let b = alg(3);
        assert_eq!(change_of_basis(&b, 5).unwrap().matrix.rows(), 2);
    }
}
