//! Exact scalars, sparse matrices and polynomial series.

pub mod field;
pub mod matrix;
pub mod poly;

pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use matrix::{axpy, collect_vec, rank_kernel, scale, Echelon, ExactMatrix, SparseVec};
pub use poly::PolySeries;
