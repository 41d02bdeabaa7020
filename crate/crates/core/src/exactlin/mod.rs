//! Exact field arithmetic and canonical linear algebra.

mod matrix;
mod scalar;
pub mod sparse;
mod subspace;

pub use matrix::{rref, Matrix};
pub use scalar::{is_prime, Field, Scalar};
pub use subspace::{kernel, Subspace};
