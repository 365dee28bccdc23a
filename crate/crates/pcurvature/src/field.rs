//! Exact arithmetic in the prime field F_p.
//!
//! Elements are residues stored as `u64`; the modulus lives in the
//! [`PrimeField`] context, not in each element. Every product is reduced
//! immediately, so word-size moduli (p < 2^31) never overflow.

use crate::error::{Error, Result};

/// Trial-division primality; moduli are below 2^31, so this is instant.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Arithmetic context for F_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= (1 << 31) || !is_prime(p) {
            return Err(Error::BadModulus(p));
        }
        Ok(PrimeField { p })
    }

    pub(crate) fn new_unchecked(p: u64) -> Self {
        PrimeField { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, a: u64) -> u64 {
        a % self.p
    }

    /// Canonical residue of a signed integer.
    pub fn from_int(&self, a: i64) -> u64 {
        let m = self.p as i64;
        (a.rem_euclid(m)) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        (a * b) % self.p
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via Fermat; zero is an explicit error.
    pub fn inv(&self, a: u64) -> Result<u64> {
        if a % self.p == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, self.p - 2))
    }

    pub fn div(&self, a: u64, b: u64) -> Result<u64> {
        Ok(self.mul(a, self.inv(b)?))
    }
}

/// Element of exact multiplicative order `p` in F_ell.
///
/// Requires `p | ell - 1`; returns the first `g^((ell-1)/p) != 1` scanning
/// g = 2, 3, ..., which makes the choice deterministic across runs.
pub fn find_order_p_element(ell: u64, p: u64) -> Result<u64> {
    let field = PrimeField::new(ell)?;
    if p < 2 || (ell - 1) % p != 0 {
        return Err(Error::NoRootOfUnity { ell, p });
    }
    let cofactor = (ell - 1) / p;
    for g in 2..ell {
        let c = field.pow(g, cofactor);
        if c != 1 {
            // c^p = g^(ell-1) = 1 and p is prime, so ord(c) = p exactly.
            return Ok(c);
        }
    }
    unreachable!("F_ell with ell > 2 has a generator")
}
