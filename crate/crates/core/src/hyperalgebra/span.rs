use std::collections::BTreeMap;

use thiserror::Error;

use crate::arith::{FpScalar, Prime};
use crate::linalg::{solve_columns, Matrix, Solution};

use super::element::{AlgebraElement, PbwMonomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpanError {
    #[error("element is not in the span of the targets")]
    NotInSpan,
    #[error("target elements are linearly dependent")]
    DependentTargets,
}

/// Shared monomial index over a family of elements.
pub fn monomial_index<'a, I>(elements: I) -> BTreeMap<PbwMonomial, usize>
where
    I: IntoIterator<Item = &'a AlgebraElement>,
{
    let mut index = BTreeMap::new();
    for e in elements {
        for (mono, _) in e.terms() {
            index.entry(mono).or_insert(0);
        }
    }
    for (i, v) in index.values_mut().enumerate() {
        *v = i;
    }
    index
}

fn common_prime<'a>(mut it: impl Iterator<Item = &'a AlgebraElement>) -> Option<Prime> {
    let first = it.next()?.prime();
    for e in it {
        assert_eq!(e.prime(), first, "mixed-modulus span computation");
    }
    Some(first)
}

/// The unique coefficients `c` with `e = sum c_k targets[k]`.
pub fn solve_in_span(
    targets: &[AlgebraElement],
    e: &AlgebraElement,
) -> Result<Vec<FpScalar>, SpanError> {
    let p = common_prime(targets.iter().chain(std::iter::once(e))).expect("nonempty");
    let index = monomial_index(targets.iter().chain(std::iter::once(e)));
    let columns: Vec<Vec<u32>> = targets.iter().map(|t| t.coordinates(&index)).collect();
    let rhs = e.coordinates(&index);
    match solve_columns(p, &columns, &rhs) {
        Solution::Unique(x) => Ok(x.into_iter().map(|v| FpScalar::new(v as i64, p)).collect()),
        Solution::Particular(_) => Err(SpanError::DependentTargets),
        Solution::Inconsistent => {
            // dependence takes precedence so callers testing independence
            // with a zero right-hand side get a definite answer
            if rank_of(p, &columns) < columns.len() {
                Err(SpanError::DependentTargets)
            } else {
                Err(SpanError::NotInSpan)
            }
        }
    }
}

/// Some coefficients with `e = sum c_k targets[k]`, allowing dependent targets.
pub fn solve_any(targets: &[AlgebraElement], e: &AlgebraElement) -> Option<Vec<FpScalar>> {
    let p = common_prime(targets.iter().chain(std::iter::once(e))).expect("nonempty");
    let index = monomial_index(targets.iter().chain(std::iter::once(e)));
    let columns: Vec<Vec<u32>> = targets.iter().map(|t| t.coordinates(&index)).collect();
    let rhs = e.coordinates(&index);
    match solve_columns(p, &columns, &rhs) {
        Solution::Unique(x) | Solution::Particular(x) => {
            Some(x.into_iter().map(|v| FpScalar::new(v as i64, p)).collect())
        }
        Solution::Inconsistent => None,
    }
}

fn rank_of(p: Prime, columns: &[Vec<u32>]) -> usize {
    if columns.is_empty() {
        return 0;
    }
    Matrix::from_rows(p, columns[0].len(), columns).rank()
}

/// Dimension of the span of `elements`.
pub fn span_rank(elements: &[AlgebraElement]) -> usize {
    let Some(p) = common_prime(elements.iter()) else {
        return 0;
    };
    let index = monomial_index(elements);
    let rows: Vec<Vec<u32>> = elements.iter().map(|e| e.coordinates(&index)).collect();
    rank_of(p, &rows)
}

pub fn linearly_independent(elements: &[AlgebraElement]) -> bool {
    span_rank(elements) == elements.len()
}

/// `sum c_k elements[k]`
pub fn combine(p: Prime, elements: &[AlgebraElement], coeffs: &[FpScalar]) -> AlgebraElement {
    let mut out = AlgebraElement::zero(p);
    for (e, c) in elements.iter().zip(coeffs) {
        out.add_assign_scaled(e, c.value());
    }
    out
}
