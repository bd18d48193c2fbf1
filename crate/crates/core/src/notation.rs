//! Text notation for elements: parsing and printing.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr   := ["-"] term (("+" | "-") term)*
//! term   := [int] factor*
//! factor := "Sq(" ints ")" | "Sq" ["^"] int          (p = 2)
//!         | "P(" ints ")" | "P" ["^"] int | "Q(" flags ")" | "Q_" int | "b"   (p odd)
//! ```
//!
//! `Sq(..)`, `P(..)` and `Q(..)` are Milnor basis elements; `Sq^a`, `P^i` and
//! `b` are the generators. A term is the product of its factors.

use crate::admissible::{word_to_milnor, AdmissibleElement};
use crate::algebra::SteenrodAlgebra;
use crate::combination::Combination;
use crate::dual::DualElement;
use crate::error::{Error, Result};
use crate::milnor::Element;
use crate::monomial::{DualMonomial, MilnorMonomial};
use crate::seq::{BSeq, Seq};
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factor {
    /// A Milnor basis element Q(E)P(R) or Sq(R).
    Milnor(MilnorMonomial),
    /// Sq^a at p = 2, P^i at odd p.
    Power(u32),
    Bockstein,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: u32,
    pub factors: Vec<Factor>,
}

struct Parser<'s> {
    chars: Vec<(usize, char)>,
    at: usize,
    src: &'s str,
    p: u32,
}

impl<'s> Parser<'s> {
    fn new(p: u32, src: &'s str) -> Self {
        Parser {
            chars: src.char_indices().filter(|(_, c)| !c.is_whitespace()).collect(),
            at: 0,
            src,
            p,
        }
    }

    fn pos(&self) -> usize {
        self.chars.get(self.at).map_or(self.src.len(), |&(i, _)| i)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.pos(),
            message: message.into(),
        })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|&(_, c)| c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        let n = s.chars().count();
        let ok = self.chars.len() >= self.at + n && self.chars[self.at..self.at + n].iter().map(|&(_, c)| c).eq(s.chars());
        if ok {
            self.at += n;
        }
        ok
    }

    fn int(&mut self) -> Result<u32> {
        let start = self.at;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.at += 1;
        }
        if start == self.at {
            return self.err("expected an integer");
        }
        let text: String = self.chars[start..self.at].iter().map(|&(_, c)| c).collect();
        text.parse().or_else(|_| {
            self.at = start;
            self.err("integer out of range")
        })
    }

    fn list(&mut self) -> Result<Vec<u32>> {
        let mut out = Vec::new();
        if self.eat(')') {
            return Ok(out);
        }
        loop {
            out.push(self.int()?);
            if self.eat(')') {
                return Ok(out);
            }
            if !self.eat(',') {
                return self.err("expected ',' or ')'");
            }
        }
    }

    fn exponent(&mut self) -> Result<u32> {
        self.eat('^');
        self.int()
    }

    fn factor(&mut self) -> Result<Option<Factor>> {
        let odd = self.p != 2;
        if self.eat_str("Sq") {
            if odd {
                return self.err("Sq is only available at p = 2; use P and b");
            }
            if self.eat('(') {
                return Ok(Some(Factor::Milnor(MilnorMonomial::from_r(self.list()?))));
            }
            return Ok(Some(Factor::Power(self.exponent()?)));
        }
        if self.eat('P') {
            if self.eat('(') {
                return Ok(Some(Factor::Milnor(MilnorMonomial::from_r(self.list()?))));
            }
            return Ok(Some(Factor::Power(self.exponent()?)));
        }
        if self.eat('Q') {
            if !odd {
                return self.err("Q is only available at odd primes");
            }
            let flags = if self.eat('_') {
                let k = self.int()? as usize;
                let mut f = vec![0u8; k + 1];
                f[k] = 1;
                f
            } else if self.eat('(') {
                let here = self.at;
                let list = self.list()?;
                if list.iter().any(|&e| e > 1) {
                    self.at = here;
                    return self.err("Q(..) entries must be 0 or 1");
                }
                list.into_iter().map(|e| e as u8).collect()
            } else {
                return self.err("expected '(' or '_' after Q");
            };
            let e = BSeq::new(flags);
            let r = if self.peek() == Some('P') && self.chars.get(self.at + 1).map(|&(_, c)| c) == Some('(') {
                self.at += 2;
                Seq::new(self.list()?)
            } else {
                Seq::zero()
            };
            return Ok(Some(Factor::Milnor(MilnorMonomial::new(e, r))));
        }
        if self.eat('b') {
            if !odd {
                return self.err("b is only available at odd primes; use Sq^1");
            }
            return Ok(Some(Factor::Bockstein));
        }
        Ok(None)
    }

    fn term(&mut self) -> Result<Term> {
        let mut coeff = 1;
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            coeff = self.int()? % self.p;
            self.eat('*');
        }
        let mut factors = Vec::new();
        while let Some(f) = self.factor()? {
            factors.push(f);
        }
        Ok(Term { coeff, factors })
    }

    fn expr(&mut self) -> Result<Vec<Term>> {
        if self.chars.is_empty() {
            return self.err("empty expression");
        }
        let mut out = Vec::new();
        let mut negate = self.eat('-');
        loop {
            let start = self.at;
            let mut t = self.term()?;
            if self.at == start {
                return self.err("expected a term");
            }
            if negate {
                t.coeff = (self.p - t.coeff) % self.p;
            }
            out.push(t);
            if self.eat('+') {
                negate = false;
            } else if self.eat('-') {
                negate = true;
            } else if self.peek().is_none() {
                return Ok(out);
            } else {
                return self.err(format!("unexpected '{}'", self.peek().unwrap()));
            }
        }
    }
}

/// The terms of an expression, unevaluated.
pub fn parse_terms(p: u32, src: &str) -> Result<Vec<Term>> {
    Parser::new(p, src).expr()
}

fn factor_element(alg: &SteenrodAlgebra, f: &Factor) -> Result<Element> {
    let p = alg.p();
    match f {
        Factor::Milnor(m) => {
            alg.ctx().check_degree(m.degree(p))?;
            Ok(alg.monomial(m.clone()))
        }
        Factor::Power(i) => word_to_milnor(alg, &power_word(p, *i)),
        Factor::Bockstein => Ok(alg.bockstein()),
    }
}

fn power_word(p: u32, i: u32) -> Word {
    if p == 2 {
        Word::even(vec![i])
    } else {
        Word::odd(vec![0, 0], vec![i])
    }
}

/// Parses and evaluates an expression in the Milnor basis.
pub fn parse_element(alg: &SteenrodAlgebra, src: &str) -> Result<Element> {
    let p = alg.p();
    let mut out = Element::zero(p);
    for t in parse_terms(p, src)? {
        let mut acc = alg.unit();
        for f in &t.factors {
            acc = alg.multiply(&acc, &factor_element(alg, f)?)?;
        }
        out.add_scaled(&acc, t.coeff);
    }
    Ok(out)
}

/// A single word such as `Sq^4 Sq^2 Sq^1` or `b P^3 b P^1`.
pub fn parse_word(p: u32, src: &str) -> Result<Word> {
    let terms = parse_terms(p, src)?;
    let bad = |message: &str| Error::Parse {
        position: 0,
        message: message.to_string(),
    };
    let [t] = terms.as_slice() else {
        return Err(bad("a word is a single term"));
    };
    if t.coeff != 1 {
        return Err(bad("a word has no coefficient"));
    }
    if p == 2 {
        let exps = t
            .factors
            .iter()
            .map(|f| match f {
                Factor::Power(i) => Ok(*i),
                _ => Err(bad("a word is a product of Sq^i")),
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(Word::even(exps));
    }
    let mut eps = vec![0u8];
    let mut exps = Vec::new();
    for f in &t.factors {
        match f {
            Factor::Bockstein => {
                let last = eps.last_mut().unwrap();
                if *last == 1 {
                    return Err(bad("b b is zero, not a word"));
                }
                *last = 1;
            }
            Factor::Power(i) => {
                exps.push(*i);
                eps.push(0);
            }
            Factor::Milnor(_) => return Err(bad("a word is a product of b and P^i")),
        }
    }
    Ok(Word::odd(eps, exps))
}

/// `Sq(1,1)` at p = 2, `Q(0,1) P(2)` at odd p, `1` for the unit.
pub fn format_monomial(p: u32, m: &MilnorMonomial) -> String {
    if p == 2 && !m.is_unit() {
        let r: Vec<String> = m.r.entries().iter().map(|x| x.to_string()).collect();
        return format!("Sq({})", r.join(","));
    }
    m.to_string()
}

/// `Sq^3 Sq^1` at p = 2, `b P^3 b P^1` at odd p, `1` for the empty word.
pub fn format_word(p: u32, w: &Word) -> String {
    let mut parts = Vec::new();
    if p == 2 {
        parts.extend(w.exps().iter().map(|i| format!("Sq^{i}")));
    } else {
        for s in 0..=w.len() {
            if s > 0 {
                parts.push(format!("P^{}", w.exp_at(s)));
            }
            if w.eps_at(s) == 1 {
                parts.push("b".to_string());
            }
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join(" ")
    }
}

fn format_combination<K>(c: &Combination<K>, show: impl Fn(&K) -> String) -> String
where
    K: Ord + Clone,
{
    if c.is_zero() {
        return "0".to_string();
    }
    c.iter()
        .map(|(k, x)| if x == 1 { show(k) } else { format!("{x} {}", show(k)) })
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn format_element(p: u32, a: &Element) -> String {
    format_combination(a, |m| format_monomial(p, m))
}

pub fn format_admissible(p: u32, a: &AdmissibleElement) -> String {
    format_combination(a, |w| format_word(p, w))
}

pub fn format_dual(a: &DualElement) -> String {
    format_combination(a, DualMonomial::to_string)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        let a = SteenrodAlgebra::with_prime(2).unwrap();
        let x = parse_element(&a, "Sq(1,1) + Sq(3)").unwrap();
        assert_eq!(parse_element(&a, &format_element(2, &x)).unwrap(), x);
        let b = SteenrodAlgebra::with_prime(3).unwrap();
        let y = parse_element(&b, "2 Q(0,1) P(2) + Q_0 P(1)").unwrap();
        assert_eq!(parse_element(&b, &format_element(3, &y)).unwrap(), y);
    }

    #[test]
    fn words() {
        let w = parse_word(3, "b P1").unwrap();
        assert_eq!(w.flat(), vec![1, 1, 0]);
        assert_eq!(w.excess(3), 3);
        assert_eq!(format_word(3, &w), "b P^1");
        let v = parse_word(2, "Sq^2Sq^1").unwrap();
        assert_eq!(format_word(2, &v), "Sq^2 Sq^1");
        assert!(parse_word(3, "b b P^1").is_err());
    }

    #[test]
    fn errors_carry_positions() {
        match parse_terms(2, "Sq(1,) ") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 5),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_terms(2, "Sq(1) ?"), Err(Error::Parse { position: 6, .. })));
        assert!(matches!(parse_terms(3, "Sq(1)"), Err(Error::Parse { .. })));
        assert!(matches!(parse_terms(3, "Q(2)"), Err(Error::Parse { .. })));
    }

    #[test]
    fn subtraction_and_coefficients() {
        let a = SteenrodAlgebra::with_prime(3).unwrap();
        let x = parse_element(&a, "P(1) - P(1)").unwrap();
        assert!(x.is_zero());
        let y = parse_element(&a, "-P(1)").unwrap();
        assert_eq!(format_element(3, &y), "2 P(1)");
    }
}
