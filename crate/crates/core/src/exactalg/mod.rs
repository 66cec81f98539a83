//! Exact integer linear algebra and polynomials.

mod charpoly;
mod closed;
mod matrix;
mod poly;

pub use charpoly::{charpoly, coefficient_bound, determinant};
pub use closed::{closed_charpoly, closed_charpoly_by_substitution, presubstitution_charpoly, quotient_of_factors};
pub use matrix::IntMatrix;
pub use poly::IntPolynomial;
