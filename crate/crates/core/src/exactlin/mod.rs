//! Exact integer and rational linear algebra: Smith and Hermite normal
//! forms, rational inverses, and coset normal forms for full-rank lattices.

mod hermite;
mod matrix;
mod rational;
mod smith;

pub use hermite::{coset_enumerate, coset_normal_form, hermite, HermiteBasis};
pub use matrix::IntMatrix;
pub use rational::{inverse_rational, RatMatrix};
pub use smith::{smith, SmithDecomposition};
