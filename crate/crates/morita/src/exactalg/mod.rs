//! Exact scalars and the linear-algebra kernel used everywhere else.

pub mod algebra;
pub mod matrix;
pub mod scalar;

pub use algebra::{radical_and_center, AlgebraData, RadicalCenter};
pub use matrix::{cokernel_basis, split_idempotent, Cokernel, Matrix, MatrixError};
pub use scalar::{Field, PrimeField, Rationals};
