//! Exact scalars (ℚ and ℚ[x]/(f)) and sparse linear algebra.

mod elim;
mod matrix;
mod scalar;

pub use elim::{column_space, generic_rank, inverse, kernel_basis, quotient_dim, rank, rational_rank, solve_linear, SubspaceBasis};
pub use matrix::{Accumulator, EntryWitness, SparseMatrix, SparseVec};
pub use scalar::{fmt_q, parse_q, q, qf, Field, FieldScalar, Modulus, Q};

use thiserror::Error;

/// Rational sparse matrix, the workhorse type of the crate.
pub type Mat = SparseMatrix<Q>;
pub type Vector = SparseVec<Q>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("vector {index} of the subspace is not contained in the ambient subspace")]
    NotContained { index: usize },
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}
