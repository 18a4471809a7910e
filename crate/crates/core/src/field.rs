//! Arithmetic in the prime field F_p.
//!
//! Polynomials and matrices store raw residues (`u32` in `[0, p)`) and call
//! the free functions below; [`FpElem`] is the checked value type exposed at
//! the API boundary.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Deterministic trial-division primality test.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Validates `p` as a modulus small enough for `u32` residues.
pub fn check_prime(p: u64) -> Result<u32> {
    if p > u32::MAX as u64 || !is_prime(p) {
        return Err(Error::NonPrimeModulus(p));
    }
    Ok(p as u32)
}

#[inline]
pub fn add(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 + b as u64) % p as u64) as u32
}

#[inline]
pub fn sub(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 + p as u64 - b as u64) % p as u64) as u32
}

#[inline]
pub fn mul(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

#[inline]
pub fn neg(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub fn pow(mut base: u32, mut exp: u64, p: u32) -> u32 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(acc, base, p);
        }
        base = mul(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue via the extended Euclidean algorithm.
pub fn inv(a: u32, p: u32) -> Result<u32> {
    let a = a % p;
    if a == 0 {
        return Err(Error::ZeroInverse);
    }
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    Ok(t0.rem_euclid(p as i64) as u32)
}

/// Reduces a signed integer into `[0, p)`.
pub fn reduce(v: i64, p: u32) -> u32 {
    v.rem_euclid(p as i64) as u32
}

/// Symmetric representative in `(-p/2, p/2]`, used for human-readable output.
pub fn signed(v: u32, p: u32) -> i64 {
    if v as u64 * 2 > p as u64 {
        v as i64 - p as i64
    } else {
        v as i64
    }
}

/// An element of F_p together with its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpElem {
    value: u32,
    p: u32,
}

impl FpElem {
    pub fn new(value: i64, p: u32) -> Result<Self> {
        let p = check_prime(p as u64)?;
        Ok(Self { value: reduce(value, p), p })
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Result<Self> {
        ff_inv(self)
    }

    fn same_field(self, other: Self) {
        assert_eq!(self.p, other.p, "F_p elements with different moduli");
    }
}

/// Multiplicative inverse in F_p; fails with [`Error::ZeroInverse`] on zero.
pub fn ff_inv(a: FpElem) -> Result<FpElem> {
    Ok(FpElem { value: inv(a.value, a.p)?, p: a.p })
}

impl Add for FpElem {
    type Output = FpElem;
    fn add(self, rhs: Self) -> Self {
        self.same_field(rhs);
        FpElem { value: add(self.value, rhs.value, self.p), p: self.p }
    }
}

impl Sub for FpElem {
    type Output = FpElem;
    fn sub(self, rhs: Self) -> Self {
        self.same_field(rhs);
        FpElem { value: sub(self.value, rhs.value, self.p), p: self.p }
    }
}

impl Mul for FpElem {
    type Output = FpElem;
    fn mul(self, rhs: Self) -> Self {
        self.same_field(rhs);
        FpElem { value: mul(self.value, rhs.value, self.p), p: self.p }
    }
}

impl Neg for FpElem {
    type Output = FpElem;
    fn neg(self) -> Self {
        FpElem { value: neg(self.value, self.p), p: self.p }
    }
}

impl fmt::Display for FpElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_examples() {
        assert_eq!(ff_inv(FpElem::new(1, 5).unwrap()).unwrap().value(), 1);
        // 2 * 3 = 6 = 1 mod 5
        assert_eq!(ff_inv(FpElem::new(2, 5).unwrap()).unwrap().value(), 3);
        assert_eq!(ff_inv(FpElem::new(0, 7).unwrap()), Err(Error::ZeroInverse));
    }

    #[test]
    fn inverse_is_inverse_for_all_small_primes() {
        for p in [2u32, 3, 5, 7, 11, 13] {
            for a in 1..p {
                let b = inv(a, p).unwrap();
                assert_eq!(mul(a, b, p), 1, "a={a} p={p}");
            }
        }
    }

    #[test]
    fn rejects_composite_moduli() {
        assert_eq!(FpElem::new(1, 9), Err(Error::NonPrimeModulus(9)));
        assert!(check_prime(1).is_err());
        assert!(check_prime(13).is_ok());
    }

    #[test]
    fn signed_representatives() {
        assert_eq!(signed(4, 5), -1);
        assert_eq!(signed(2, 5), 2);
        assert_eq!(reduce(-1, 7), 6);
        assert_eq!(pow(3, 4, 5), 1);
    }
}
