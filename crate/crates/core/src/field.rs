//! Arithmetic in the prime field F_p and Lucas-style multinomial coefficients.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The ambient prime together with the global degree truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeContext {
    p: u32,
    degree_cap: u32,
}

impl PrimeContext {
    pub fn new(p: u32, degree_cap: u32) -> Result<Self> {
        if !(2..=13).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(PrimeContext { p, degree_cap })
    }

    /// Context with the default cap for `p`: 64 at p = 2, 60 at p = 3, 50 otherwise.
    pub fn with_default_cap(p: u32) -> Result<Self> {
        Self::new(p, default_cap(p))
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    #[inline]
    pub fn is_odd(&self) -> bool {
        self.p != 2
    }

    pub fn check_degree(&self, degree: u32) -> Result<()> {
        if degree > self.degree_cap {
            Err(Error::CapExceeded {
                degree,
                cap: self.degree_cap,
            })
        } else {
            Ok(())
        }
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        (a + b) % self.p
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        (a + self.p - b % self.p) % self.p
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        (self.p - a % self.p) % self.p
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        (a * b) % self.p
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a % self.p;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: u32) -> u32 {
        let a = a % self.p;
        assert!(a != 0, "zero has no inverse in F_{}", self.p);
        self.pow(a, (self.p - 2) as u64)
    }

    /// Reduce a signed integer into [0, p).
    pub fn reduce(&self, a: i64) -> u32 {
        a.rem_euclid(self.p as i64) as u32
    }

    /// (-1)^k as a field element.
    #[inline]
    pub fn sign(&self, k: usize) -> u32 {
        if k % 2 == 0 {
            1 % self.p
        } else {
            self.p - 1
        }
    }

    pub fn multinomial(&self, parts: &[u32]) -> u32 {
        multinomial_mod_p(parts, self.p)
    }

    /// Integer power p^k.
    #[inline]
    pub fn power(&self, k: u32) -> u64 {
        (self.p as u64).pow(k)
    }
}

pub fn default_cap(p: u32) -> u32 {
    match p {
        2 => 64,
        3 => 60,
        _ => 50,
    }
}

pub fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Multinomial coefficient (sum parts; parts) reduced mod p, evaluated one
/// base-p digit at a time. Any carry makes the coefficient vanish. The empty
/// list gives 1.
pub fn multinomial_mod_p(parts: &[u32], p: u32) -> u32 {
    let mut digits: Vec<u32> = parts.to_vec();
    let mut result = 1u32;
    let fact: Vec<u32> = (0..p).scan(1u32, |acc, k| {
        let v = if k == 0 { 1 } else { *acc * k % p };
        *acc = v;
        Some(v)
    })
    .collect();
    while digits.iter().any(|&d| d > 0) {
        let mut sum = 0u32;
        let mut denom = 1u32;
        for d in digits.iter_mut() {
            let digit = *d % p;
            sum += digit;
            if sum >= p {
                return 0;
            }
            denom = denom * fact[digit as usize] % p;
            *d /= p;
        }
        let inv = mod_pow(denom, p - 2, p);
        result = result * fact[sum as usize] % p * inv % p;
    }
    result % p
}

fn mod_pow(a: u32, mut e: u32, p: u32) -> u32 {
    let mut base = a % p;
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Binomial coefficient mod p.
pub fn binomial_mod_p(n: u32, k: u32, p: u32) -> u32 {
    if k > n {
        0
    } else {
        multinomial_mod_p(&[k, n - k], p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multinomial_examples() {
        assert_eq!(multinomial_mod_p(&[1, 1], 2), 0);
        assert_eq!(multinomial_mod_p(&[7], 5), 1);
        assert_eq!(multinomial_mod_p(&[2, 2], 2), 0);
        assert_eq!(multinomial_mod_p(&[1, 2], 3), 0);
        assert_eq!(multinomial_mod_p(&[], 3), 1);
        // C(4,1) = 4 = 1 mod 3
        assert_eq!(multinomial_mod_p(&[1, 3], 3), 1);
    }

    #[test]
    fn context_validation() {
        assert!(PrimeContext::new(4, 10).is_err());
        assert!(PrimeContext::new(17, 10).is_err());
        assert!(PrimeContext::new(1, 10).is_err());
        let ctx = PrimeContext::with_default_cap(3).unwrap();
        assert_eq!(ctx.degree_cap(), 60);
        assert!(ctx.check_degree(61).is_err());
    }

    #[test]
    fn field_ops() {
        let f = PrimeContext::new(7, 10).unwrap();
        for a in 1..7 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
        assert_eq!(f.reduce(-1), 6);
        assert_eq!(f.sign(3), 6);
    }
}
