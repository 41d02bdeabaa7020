//! Exact computations with m-homogeneous algebras: Zhang twists, Koszul duals,
//! Manin's universal bialgebra `end^r(A) = A • A^!`, twisting functionals and
//! the 2-cocycles they induce.

pub mod cocycle;
pub mod error;
pub mod exactlin;
pub mod freetensor;
pub mod homog;
pub mod hopfenv;
pub mod koszul;
pub mod manin;
pub mod random;
pub mod report;
pub mod twist;

pub use error::{Error, Result};
