//! Weight projectors, the rank-one elements of `A_1`, the Frobenius lift
//! that carries them up one level, and the resulting elements of `A_r`.

mod construct;
mod pair;
mod tables;

use thiserror::Error;

pub use construct::{
    b1, b1_via_xy, extract_power_coeffs, leading_index, mu, Idempotents,
};
pub use pair::{classify, Case, PairAJ, TupleAJ};
pub use tables::{n_by_division, n_eps, n_tilde, psi_polys};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdempotentError {
    #[error("({a}, {two_j}/2) is not an index pair for p = {p}")]
    NotAnIndex { a: i64, two_j: i64, p: u32 },
    #[error("{0}")]
    Parse(String),
    #[error("pair {pair} is in case {case}, which has no shift")]
    NoShift { pair: String, case: Case },
    #[error("selector polynomials are defined for odd primes only")]
    EvenPrime,
    #[error("bit vector has length {eps} but the tuple has {r} pairs")]
    LengthMismatch { eps: u32, r: u32 },
    #[error("coefficient extraction failed: {0}")]
    Extraction(String),
}
