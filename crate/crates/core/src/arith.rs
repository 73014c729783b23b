//! Arithmetic in the prime field `F_p` and binomial coefficients reduced mod `p`.
//!
//! Residues are stored as `u32` in canonical form `[0, p)`. The modulus is a
//! runtime value; combining scalars of different moduli panics.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("prime {0} is too large (the engine supports p < 2^31)")]
    TooLarge(u64),
}

/// A validated prime modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u64) -> Result<Self, ArithError> {
        if p >= 1 << 31 {
            return Err(ArithError::TooLarge(p));
        }
        if !is_prime(p) {
            return Err(ArithError::NotPrime(p));
        }
        Ok(Prime(p as u32))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    /// `p^e` as an integer.
    pub fn power(self, e: u32) -> u64 {
        (self.0 as u64).pow(e)
    }

    #[inline]
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub fn reduce_u64(self, x: u64) -> u32 {
        (x % self.0 as u64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        let p = self.0 as u64;
        (if s >= p { s - p } else { s }) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + (self.0 - b)
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    /// `a += b * c`
    #[inline]
    pub fn mul_add_assign(self, a: &mut u32, b: u32, c: u32) {
        *a = ((*a as u64 + b as u64 * c as u64) % self.0 as u64) as u32;
    }

    pub fn pow_mod(self, a: u32, mut e: u64) -> u32 {
        let mut base = a % self.0;
        let mut acc = 1 % self.0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(self, a: u32) -> Option<u32> {
        let a = a % self.0;
        if a == 0 {
            None
        } else {
            Some(self.pow_mod(a, self.0 as u64 - 2))
        }
    }

    /// `n! mod p`
    pub fn factorial(self, n: u64) -> u32 {
        (1..=n).fold(1 % self.0, |acc, k| self.mul(acc, self.reduce_u64(k)))
    }

    pub fn scalar(self, v: i64) -> FpScalar {
        FpScalar {
            value: self.reduce(v),
            p: self,
        }
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of `F_p`, carrying its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FpScalar {
    value: u32,
    p: Prime,
}

impl FpScalar {
    pub fn new(value: i64, p: Prime) -> Self {
        p.scalar(value)
    }

    pub fn zero(p: Prime) -> Self {
        FpScalar { value: 0, p }
    }

    pub fn one(p: Prime) -> Self {
        p.scalar(1)
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.value
    }

    #[inline]
    pub fn prime(self) -> Prime {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Option<FpScalar> {
        self.p.inv(self.value).map(|value| FpScalar { value, p: self.p })
    }

    pub fn pow(self, e: u64) -> FpScalar {
        FpScalar {
            value: self.p.pow_mod(self.value, e),
            p: self.p,
        }
    }

    #[inline]
    fn check(self, other: FpScalar) -> Prime {
        assert_eq!(
            self.p, other.p,
            "mixed-modulus arithmetic: F_{} vs F_{}",
            self.p, other.p
        );
        self.p
    }
}

impl fmt::Display for FpScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for FpScalar {
    type Output = FpScalar;
    fn add(self, rhs: FpScalar) -> FpScalar {
        let p = self.check(rhs);
        FpScalar {
            value: p.add(self.value, rhs.value),
            p,
        }
    }
}

impl Sub for FpScalar {
    type Output = FpScalar;
    fn sub(self, rhs: FpScalar) -> FpScalar {
        let p = self.check(rhs);
        FpScalar {
            value: p.sub(self.value, rhs.value),
            p,
        }
    }
}

impl Mul for FpScalar {
    type Output = FpScalar;
    fn mul(self, rhs: FpScalar) -> FpScalar {
        let p = self.check(rhs);
        FpScalar {
            value: p.mul(self.value, rhs.value),
            p,
        }
    }
}

impl Neg for FpScalar {
    type Output = FpScalar;
    fn neg(self) -> FpScalar {
        FpScalar {
            value: self.p.neg(self.value),
            p: self.p,
        }
    }
}

impl AddAssign for FpScalar {
    fn add_assign(&mut self, rhs: FpScalar) {
        *self = *self + rhs;
    }
}

impl SubAssign for FpScalar {
    fn sub_assign(&mut self, rhs: FpScalar) {
        *self = *self - rhs;
    }
}

impl MulAssign for FpScalar {
    fn mul_assign(&mut self, rhs: FpScalar) {
        *self = *self * rhs;
    }
}

/// `binom(top, bottom) mod p` for a signed integer `top`.
///
/// Negative tops use `binom(-a-1, k) = (-1)^k binom(a+k, k)`. Non-negative
/// tops are evaluated as an exact integer quotient, tracking the `p`-adic
/// valuation of numerator and denominator separately from their unit parts.
pub fn binom_mod_p(top: i64, bottom: u64, p: Prime) -> FpScalar {
    if bottom == 0 {
        return FpScalar::one(p);
    }
    if top < 0 {
        let a = (-(top as i128) - 1) as u64;
        let n = a.checked_add(bottom).expect("binomial top overflows u64");
        let v = binom_nonneg_valuation(n, bottom, p);
        return if bottom % 2 == 1 { -v } else { v };
    }
    binom_nonneg_valuation(top as u64, bottom, p)
}

fn binom_nonneg_valuation(n: u64, k: u64, p: Prime) -> FpScalar {
    if k > n {
        return FpScalar::zero(p);
    }
    let k = k.min(n - k);
    let q = p.get() as u64;
    let mut valuation: i64 = 0;
    let mut num = 1u32;
    let mut den = 1u32;
    for i in 0..k {
        let mut a = n - i;
        while a.is_multiple_of(q) {
            a /= q;
            valuation += 1;
        }
        num = p.mul(num, p.reduce_u64(a));
        let mut b = i + 1;
        while b % q == 0 {
            b /= q;
            valuation -= 1;
        }
        den = p.mul(den, p.reduce_u64(b));
    }
    debug_assert!(valuation >= 0);
    if valuation > 0 {
        return FpScalar::zero(p);
    }
    let inv = p.inv(den).expect("unit part of denominator is invertible");
    FpScalar {
        value: p.mul(num, inv),
        p,
    }
}

/// Lucas' theorem: the product of digit binomials in base `p`.
pub fn lucas_check(top: u64, bottom: u64, p: Prime) -> FpScalar {
    let q = p.get() as u64;
    let (mut n, mut k) = (top, bottom);
    let mut acc = 1u32 % p.get();
    while k > 0 {
        let (nd, kd) = (n % q, k % q);
        if kd > nd {
            return FpScalar::zero(p);
        }
        acc = p.mul(acc, small_binom(nd, kd, p));
        n /= q;
        k /= q;
    }
    FpScalar { value: acc, p }
}

// binom(n, k) for 0 <= k <= n < p
fn small_binom(n: u64, k: u64, p: Prime) -> u32 {
    let mut num = 1u32;
    let mut den = 1u32;
    for i in 0..k {
        num = p.mul(num, p.reduce_u64(n - i));
        den = p.mul(den, p.reduce_u64(i + 1));
    }
    p.mul(num, p.inv(den).expect("k! is a unit for k < p"))
}

/// Table-driven binomials mod `p` (Lucas digits over a Pascal triangle of
/// side `p`), used on the hot paths of multiplication.
#[derive(Clone, Debug)]
pub struct Binomials {
    p: Prime,
    pascal: Vec<u32>,
}

impl Binomials {
    pub fn new(p: Prime) -> Self {
        let q = p.get() as usize;
        let mut pascal = vec![0u32; q * q];
        for n in 0..q {
            pascal[n * q] = 1;
            for k in 1..=n {
                let above = pascal[(n - 1) * q + k - 1];
                let right = if k < n { pascal[(n - 1) * q + k] } else { 0 };
                pascal[n * q + k] = p.add(above, right);
            }
        }
        Binomials { p, pascal }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    #[inline]
    pub fn unsigned(&self, mut n: u64, mut k: u64) -> u32 {
        let q = self.p.get() as u64;
        let mut acc = 1u32;
        while k > 0 {
            let (nd, kd) = (n % q, k % q);
            if kd > nd {
                return 0;
            }
            acc = self.p.mul(acc, self.pascal[(nd * q + kd) as usize]);
            n /= q;
            k /= q;
        }
        acc
    }

    #[inline]
    pub fn signed(&self, top: i64, bottom: u64) -> u32 {
        if top >= 0 {
            self.unsigned(top as u64, bottom)
        } else {
            let a = (-(top as i128) - 1) as u64;
            let v = self.unsigned(a + bottom, bottom);
            if bottom % 2 == 1 {
                self.p.neg(v)
            } else {
                v
            }
        }
    }
}
