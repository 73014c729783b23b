pub mod arith;
pub mod blocks;
pub mod cli;
pub mod eps;
pub mod expr;
pub mod hyperalgebra;
pub mod idempotents;
pub mod linalg;
pub mod poly;
pub mod verify;
