//! Rational quadratic forms of signature `(n, 1)` and integral models of their isometries.

mod form;
mod isometry;
mod matrix;

pub use form::{Diagonalization, QuadraticForm};
pub use isometry::{integralize, Integralization, RationalIsometry};
pub use matrix::{hermite_normal_form, RatMatrix};
