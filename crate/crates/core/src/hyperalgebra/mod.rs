//! The hyperalgebra of `SL2` over `F_p` in the PBW basis
//! `Y^(m) binom(H, n) X^(m')`, together with the subalgebras `U_r`, `U_r^0`,
//! `A_r`, the Frobenius maps and an operator-representation oracle.

mod element;
mod oracle;
mod span;
mod straighten;

pub use element::{basis_monomials, random_element, AlgebraElement, PbwMonomial, Sampling};
pub use oracle::{default_degree_bound, operator_matrix, OperatorMatrix};
pub use span::{
    combine, linearly_independent, monomial_index, solve_any, solve_in_span, span_rank,
    SpanError,
};
pub use straighten::multiply;

/// Ordinary power `X^s = s! X^(s)`.
pub fn x_power(p: crate::arith::Prime, s: u32) -> AlgebraElement {
    AlgebraElement::monomial(p, PbwMonomial::new(0, 0, s), p.factorial(s as u64) as i64)
}

/// Ordinary power `Y^s = s! Y^(s)`.
pub fn y_power(p: crate::arith::Prime, s: u32) -> AlgebraElement {
    AlgebraElement::monomial(p, PbwMonomial::new(s, 0, 0), p.factorial(s as u64) as i64)
}
