//! Leading-index tables for the rank-one elements, in closed form and by
//! polynomial division.

use crate::arith::Prime;
use crate::poly::{half_shift_square, selector, weight_product, Poly};

use super::pair::{Case, PairAJ};
use super::IdempotentError;

/// Leading `Y^m X^m` index of the rank-one element for `(eps, pair)`.
pub fn n_eps(eps: u8, pair: PairAJ) -> u32 {
    let q = pair.prime().get() as i64;
    if q == 2 {
        return match (pair.a(), pair.two_j(), eps) {
            (0, 1, 0) => 0,
            (0, 1, _) => 1,
            (1, 0, _) => 1,
            _ => 0,
        };
    }
    let a = pair.a() as i64;
    let j = pair.j() as i64;
    let v = match (pair.case(), eps) {
        (Case::A, 0) => (q - a - 1) / 2 + j,
        (Case::A, _) => (3 * q - a - 1) / 2 - j,
        (Case::B, 0) => (q - a - 1) / 2 - j,
        (Case::B, _) => (q - a - 1) / 2 + j,
        (Case::C, 0) => (2 * q - a - 1) / 2 - j,
        (Case::C, _) => (2 * q - a - 1) / 2 + j,
        (Case::D, 0) => j - (a + 1) / 2,
        (Case::D, _) => (2 * q - a - 1) / 2 - j,
    };
    debug_assert!(v >= 0);
    v as u32
}

/// Leading `X^m Y^m` index of the rank-one element for `(eps, pair)`.
pub fn n_tilde(eps: u8, pair: PairAJ) -> u32 {
    let q = pair.prime().get() as i64;
    if q == 2 {
        return match (pair.a(), pair.two_j(), eps) {
            (0, 1, 0) => 0,
            (0, 1, _) => 1,
            (1, 0, _) => 0,
            _ => 1,
        };
    }
    let a = pair.a() as i64;
    let j = pair.j() as i64;
    let v = match (pair.case(), eps) {
        (Case::A, 0) => (-q + a - 1) / 2 + j,
        (Case::A, _) => (q + a - 1) / 2 - j,
        (Case::B, 0) => (q + a - 1) / 2 - j,
        (Case::B, _) => (q + a - 1) / 2 + j,
        (Case::C, 0) => (a - 1) / 2 - j,
        (Case::C, _) => (a - 1) / 2 + j,
        (Case::D, 0) => (a - 1) / 2 + j,
        (Case::D, _) => (2 * q + a - 1) / 2 - j,
    };
    debug_assert!(v >= 0);
    v as u32
}

/// The selector polynomial for `(eps, j)` with its argument shifted by
/// `((a+1)/2)^2`. Odd primes only.
pub fn psi_polys(a: i64, j: u32, eps: u8, p: Prime) -> Result<Poly, IdempotentError> {
    if p.get() == 2 {
        return Err(IdempotentError::EvenPrime);
    }
    if j > (p.get() - 1) / 2 || eps > 1 {
        return Err(IdempotentError::NotAnIndex {
            a,
            two_j: 2 * j as i64,
            p: p.get(),
        });
    }
    Ok(selector(j, eps, p).shift(half_shift_square(a, p)))
}

/// Largest `n` with the weight product of length `n` dividing the shifted
/// selector polynomial, for any integer `a` and odd `p`.
pub fn n_by_division(eps: u8, a: i64, j: u32, p: Prime) -> Result<u32, IdempotentError> {
    let target = psi_polys(a, j, eps, p)?;
    let mut n = 0;
    // the products are nested, so divisibility fails from some point on
    while weight_product(a, n + 1, p).divides(&target) {
        n += 1;
    }
    Ok(n)
}
