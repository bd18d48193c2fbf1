//! Index pairs (E, R) for Milnor basis monomials Q(E)P(R) and for the dual
//! monomials tau(E)xi(R).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::seq::{BSeq, Seq};

/// Degree of Q_k (or tau_k): 2p^k - 1.
pub fn exterior_degree(p: u32, k: usize) -> u32 {
    2 * p.pow(k as u32) - 1
}

/// Degree of P(E_t) (or xi_t): 2(p^t - 1) at odd p, 2^t - 1 at p = 2.
pub fn polynomial_degree(p: u32, t: usize) -> u32 {
    if p == 2 {
        (1u32 << t) - 1
    } else {
        2 * (p.pow(t as u32) - 1)
    }
}

fn index_degree(p: u32, e: &BSeq, r: &Seq) -> u32 {
    let ext: u32 = e.indices().into_iter().map(|k| exterior_degree(p, k)).sum();
    let poly: u32 = r
        .entries()
        .iter()
        .enumerate()
        .map(|(i, &x)| x * polynomial_degree(p, i + 1))
        .sum();
    ext + poly
}

fn index_weight(p: u32, e: &BSeq, r: &Seq) -> u32 {
    if p == 2 {
        r.total()
    } else {
        e.total() + 2 * r.total()
    }
}

/// Q(E)P(R) in the Milnor basis (Sq(R) at p = 2, where E is always empty).
///
/// Ordering is lexicographic on E, then on R.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MilnorMonomial {
    pub e: BSeq,
    pub r: Seq,
}

/// tau(E)xi(R) in the dual algebra (zeta(R) at p = 2).
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DualMonomial {
    pub e: BSeq,
    pub r: Seq,
}

macro_rules! index_methods {
    ($t:ident) => {
        impl $t {
            pub fn new(e: BSeq, r: Seq) -> Self {
                $t { e, r }
            }

            pub fn unit() -> Self {
                $t::default()
            }

            pub fn from_r(r: Vec<u32>) -> Self {
                $t {
                    e: BSeq::zero(),
                    r: Seq::new(r),
                }
            }

            pub fn from_parts(e: Vec<u8>, r: Vec<u32>) -> Self {
                $t {
                    e: BSeq::new(e),
                    r: Seq::new(r),
                }
            }

            pub fn degree(&self, p: u32) -> u32 {
                index_degree(p, &self.e, &self.r)
            }

            /// |E| + 2|R| at odd p, |R| at p = 2.
            pub fn weight(&self, p: u32) -> u32 {
                index_weight(p, &self.e, &self.r)
            }

            pub fn is_unit(&self) -> bool {
                self.e.is_empty() && self.r.is_empty()
            }
        }
    };
}

index_methods!(MilnorMonomial);
index_methods!(DualMonomial);

impl From<&MilnorMonomial> for DualMonomial {
    fn from(m: &MilnorMonomial) -> Self {
        DualMonomial {
            e: m.e.clone(),
            r: m.r.clone(),
        }
    }
}

impl From<&DualMonomial> for MilnorMonomial {
    fn from(m: &DualMonomial) -> Self {
        MilnorMonomial {
            e: m.e.clone(),
            r: m.r.clone(),
        }
    }
}

impl MilnorMonomial {
    /// Q_k.
    pub fn q(k: usize) -> Self {
        MilnorMonomial {
            e: BSeq::unit(k),
            r: Seq::zero(),
        }
    }

    /// P^i = P((i)), or Sq^i at p = 2.
    pub fn p_power(i: u32) -> Self {
        MilnorMonomial::from_r(vec![i])
    }
}

impl DualMonomial {
    pub fn tau(k: usize) -> Self {
        DualMonomial {
            e: BSeq::unit(k),
            r: Seq::zero(),
        }
    }

    /// xi_t (zeta_t at p = 2).
    pub fn xi(t: usize) -> Self {
        DualMonomial {
            e: BSeq::zero(),
            r: Seq::unit(t),
        }
    }
}

fn fmt_list<T: fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for MilnorMonomial {
    /// `Q(..) P(..)` form; p = 2 monomials have empty E and print as `P(..)`
    /// here, callers that know the prime use [`crate::notation`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        if !self.e.is_empty() {
            parts.push(format!("Q({})", fmt_list(self.e.entries())));
        }
        if !self.r.is_empty() {
            parts.push(format!("P({})", fmt_list(self.r.entries())));
        }
        write!(f, "{}", parts.join(" "))
    }
}

impl fmt::Display for DualMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        if !self.e.is_empty() {
            parts.push(format!("tau({})", fmt_list(self.e.entries())));
        }
        if !self.r.is_empty() {
            parts.push(format!("xi({})", fmt_list(self.r.entries())));
        }
        write!(f, "{}", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees_and_weights() {
        assert_eq!(MilnorMonomial::q(1).degree(3), 5);
        assert_eq!(MilnorMonomial::from_parts(vec![1], vec![1]).degree(3), 5);
        assert_eq!(MilnorMonomial::from_parts(vec![1], vec![1]).weight(3), 3);
        assert_eq!(MilnorMonomial::from_r(vec![1, 1]).degree(2), 4);
        assert_eq!(MilnorMonomial::from_r(vec![1, 1]).weight(2), 2);
        assert_eq!(DualMonomial::xi(2).degree(2), 3);
    }
}
