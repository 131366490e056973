//! Exact integer and rational linear algebra.

mod det;
mod hnf;
mod matrix;
mod snf;
mod sparsity;

pub use det::{adjugate, det_exact, rank, rational_rank, solve, Inverse};
pub use hnf::{hnf, HnfDecomposition};
pub use matrix::{rat, Int, Matrix, Rat};
pub use snf::{snf, SnfDecomposition};
pub use sparsity::{
    delta_k, max_abs_subdeterminant, sparsity_stats, subsets, DetLowerBound, SparsityStats,
};
pub(crate) use matrix::{dot, dot_rat};
