//! An independent multiplication oracle: the action of the hyperalgebra on
//! the polynomial ring `F_p[x, y]` truncated at total degree `D`.
//!
//! `X^(m)` sends `x^a y^b` to `binom(b, m) x^(a+m) y^(b-m)`, `Y^(m)` sends it
//! to `binom(a, m) x^(a-m) y^(b+m)` and `binom(H, n)` scales it by
//! `binom(a - b, n)`. Every operator preserves total degree, so the
//! representation is a list of square blocks, one per degree `d <= D`, on the
//! basis `x^a y^(d-a)` indexed by `a`.

use crate::arith::{binom_mod_p, Prime};
use crate::linalg::Matrix;

use super::element::{AlgebraElement, PbwMonomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorMatrix {
    degree_bound: u32,
    blocks: Vec<Matrix>,
}

impl OperatorMatrix {
    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    pub fn block(&self, d: u32) -> &Matrix {
        &self.blocks[d as usize]
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &OperatorMatrix) -> OperatorMatrix {
        assert_eq!(self.degree_bound, other.degree_bound);
        OperatorMatrix {
            degree_bound: self.degree_bound,
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a.mul(b))
                .collect(),
        }
    }

    /// All block entries concatenated, for rank computations.
    pub fn flatten(&self) -> Vec<u32> {
        self.blocks.iter().flat_map(|b| b.data().iter().copied()).collect()
    }
}

/// Image of the basis vector `x^a y^b` under a single PBW monomial, or
/// `None` when it is killed.
fn apply_monomial(p: Prime, mono: PbwMonomial, a: u32, b: u32) -> Option<(u32, u32)> {
    let (mut a, mut b) = (a, b);
    // rightmost factor acts first
    if mono.m_prime > b {
        return None;
    }
    let mut c = binom_mod_p(b as i64, mono.m_prime as u64, p);
    a += mono.m_prime;
    b -= mono.m_prime;
    c *= binom_mod_p(a as i64 - b as i64, mono.n as u64, p);
    if mono.m > a {
        return None;
    }
    c *= binom_mod_p(a as i64, mono.m as u64, p);
    a -= mono.m;
    if c.is_zero() {
        None
    } else {
        Some((a, c.value()))
    }
}

/// The operator of `e` on polynomials of total degree at most `degree_bound`.
pub fn operator_matrix(e: &AlgebraElement, degree_bound: u32) -> OperatorMatrix {
    let p = e.prime();
    let mut blocks = Vec::with_capacity(degree_bound as usize + 1);
    for d in 0..=degree_bound {
        let size = d as usize + 1;
        let mut block = Matrix::zeros(p, size, size);
        for (mono, c) in e.terms() {
            if mono.m > d || mono.m_prime > d {
                continue;
            }
            for a in 0..=d {
                if let Some((a_out, v)) = apply_monomial(p, mono, a, d - a) {
                    block.add_to(a_out as usize, a as usize, p.mul(v, c.value()));
                }
            }
        }
        blocks.push(block);
    }
    OperatorMatrix {
        degree_bound,
        blocks,
    }
}

/// Default truncation degree `2 p^r`.
pub fn default_degree_bound(p: Prime, r: u32) -> u32 {
    2 * p.power(r) as u32
}
