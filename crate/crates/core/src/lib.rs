//! Exact computations around the group of linear maps that preserve every
//! invariant polynomial of a reductive group representation.

pub mod chevalley;
pub mod classical;
pub mod engine;
pub mod error;
pub mod exact;
pub mod roots;
pub mod sampling;
pub mod sl2;
pub mod suite;

pub use error::{Error, Result};
pub use exact::{GaussianRational, Matrix, Polynomial, Rational};
