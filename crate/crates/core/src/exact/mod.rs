//! Exact arithmetic: ℚ(i) scalars, sparse polynomials, matrices and
//! elimination.

mod gaussian;
pub mod linear;
mod matrix;
pub(crate) mod packed;
pub mod modular;
mod poly;
mod polymatrix;
mod rational;

pub use gaussian::{GaussianRational, GR};
pub use linear::{SparseEchelon, SparseRow};
pub use matrix::Matrix;
pub use poly::{Monomial, Polynomial};
pub use polymatrix::PolyMatrix;
pub use rational::{common_denominator, Rational};
