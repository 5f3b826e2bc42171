//! Exact fields and sparse linear algebra.

pub mod echelon;
pub mod field;
pub mod sparse;

pub use echelon::{rank_kernel_image, rank_kernel_image_with, solve, Backend, Decomposition, DenseEchelon, Echelon, Insert};
pub use field::{Field, PrimeField, Rationals};
pub use sparse::{SparseMatrix, SparseVec};
