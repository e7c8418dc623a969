//! Residue arithmetic in F_p for small odd primes.
//!
//! Scalars are bare residues; every operation goes through the [`PrimeField`]
//! that owns the modulus. Moduli are capped at 2^16 so that a product of two
//! residues always fits in a `u64` with room to spare.

use std::fmt;

use crate::error::{Error, Result};

/// Upper bound (exclusive) on supported moduli.
pub const MAX_PRIME: u64 = 1 << 16;

/// An element of F_p, stored as its least nonnegative residue.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar(pub(crate) u32);

impl Scalar {
    pub const ZERO: Scalar = Scalar(0);
    pub const ONE: Scalar = Scalar(1);

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    /// Odd primes only: characters need primitive n-th roots with n >= 2.
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || p >= MAX_PRIME || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    /// Reduces any integer into the field.
    #[inline]
    pub fn elem(self, v: i64) -> Scalar {
        Scalar(v.rem_euclid(self.p as i64) as u32)
    }

    /// Signed representative in (-p/2, p/2], handy for printing.
    pub fn signed(self, a: Scalar) -> i64 {
        let v = a.0 as i64;
        if v > self.p as i64 / 2 {
            v - self.p as i64
        } else {
            v
        }
    }

    #[inline]
    pub fn add(self, a: Scalar, b: Scalar) -> Scalar {
        let s = a.0 + b.0;
        Scalar(if s >= self.p { s - self.p } else { s })
    }

    #[inline]
    pub fn sub(self, a: Scalar, b: Scalar) -> Scalar {
        Scalar(if a.0 >= b.0 { a.0 - b.0 } else { a.0 + self.p - b.0 })
    }

    #[inline]
    pub fn neg(self, a: Scalar) -> Scalar {
        Scalar(if a.0 == 0 { 0 } else { self.p - a.0 })
    }

    #[inline]
    pub fn mul(self, a: Scalar, b: Scalar) -> Scalar {
        Scalar(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32)
    }

    /// `a + b*c`, the inner step of every elimination loop.
    #[inline]
    pub fn mul_add(self, a: Scalar, b: Scalar, c: Scalar) -> Scalar {
        Scalar(((a.0 as u64 + b.0 as u64 * c.0 as u64) % self.p as u64) as u32)
    }

    fn pow_u(self, a: Scalar, mut e: u64) -> Scalar {
        let mut base = a;
        let mut acc = Scalar::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(self, a: Scalar) -> Result<Scalar> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow_u(a, self.p as u64 - 2))
    }

    pub fn div(self, a: Scalar, b: Scalar) -> Result<Scalar> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Negative exponents go through the inverse.
    pub fn pow(self, a: Scalar, e: i64) -> Result<Scalar> {
        if e >= 0 {
            Ok(self.pow_u(a, e as u64))
        } else {
            Ok(self.pow_u(self.inv(a)?, e.unsigned_abs()))
        }
    }

    pub fn multiplicative_order(self, a: Scalar) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::ZeroElement);
        }
        let mut acc = a;
        let mut k = 1;
        while acc != Scalar::ONE {
            acc = self.mul(acc, a);
            k += 1;
        }
        Ok(k)
    }

    /// Smallest residue of exact multiplicative order `m`.
    pub fn element_of_order(self, m: u64) -> Result<Scalar> {
        let group_order = self.p as u64 - 1;
        if m == 0 || group_order % m != 0 {
            return Err(Error::NoSuchRoot { order: m, p: self.p });
        }
        for r in 1..self.p {
            let s = Scalar(r);
            if self.multiplicative_order(s)? == m {
                return Ok(s);
            }
        }
        Err(Error::NoSuchRoot { order: m, p: self.p })
    }

    /// `1/k` for a nonzero integer k, e.g. the averaging weight 1/|G|.
    pub fn inv_int(self, k: usize) -> Result<Scalar> {
        self.inv(self.elem(k as i64))
    }
}
