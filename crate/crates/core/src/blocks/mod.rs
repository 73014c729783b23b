//! Blocks of `A_r` cut out by the idempotents, their projective
//! indecomposables and the radical, socle and trace-form structure.

mod algebra;
pub mod combinatorics;
mod report;

use thiserror::Error;

use crate::idempotents::IdempotentError;

pub use algebra::BlockAlgebra;
pub use combinatorics::{
    loewy_length, loewy_series, pim_basis, pim_radical, product, radical_power, socle_series,
    x_set, yx_action, LoewyLayer, LoewySeries, XSet,
};
pub use report::{
    block_decomposition, block_report, check_cap, pim_report, BlockReport, Decomposition, Level,
    PairReport, PimDetail, PimReport, DEFAULT_DIM_CAP,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BlockError {
    #[error("bit vector has length {got} but the tuple has {r} pairs")]
    Length { got: u32, r: u32 },
    #[error("{eps} is not in the block: position {position} is set but pair {pair} is not free")]
    NotInBlock {
        eps: String,
        position: u32,
        pair: String,
    },
    #[error("position {s} is out of range for {r} pairs")]
    Position { s: u32, r: u32 },
    #[error("p^(2r) = {dim} for p = {p}, r = {r} exceeds the dimension cap {cap}")]
    CapExceeded { p: u32, r: u32, dim: u128, cap: u64 },
    #[error(transparent)]
    Idempotent(#[from] IdempotentError),
    #[error("the lifted elements of block {0} are linearly dependent")]
    DependentBasis(String),
    #[error("block {tuple}: the product of {left} and {right} leaves the span of the block")]
    NotClosed {
        tuple: String,
        left: String,
        right: String,
    },
}
