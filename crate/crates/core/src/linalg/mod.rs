//! Exact sparse linear algebra over the rationals and prime fields.

mod echelon;
mod field;
mod sparse;

pub use echelon::{
    kernel_basis, kernel_from_rref, membership, row_reduce, subspace_equal, EchelonBuilder,
    Subspace,
};
pub use field::{Field, FieldTag, PrimeField, Rationals, DEFAULT_PRIME};
pub use sparse::{SparseMatrix, SparseVec};
