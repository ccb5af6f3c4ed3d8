//! Salem polynomial census, primitive solutions of `A^2 + D B^2 = C^2`, and the
//! length-spectrum calculators built on them.
//!
//! Modules:
//! - [`poly`]: palindromic polynomials, trace transform, Sturm counts, Salem classification
//! - [`diophantine`]: brute-force and parametrized triple counts, lattice counts
//! - [`census`]: exhaustive enumeration of Salem polynomials and the counting constants
//! - [`quadform`]: rational quadratic forms, reduced determinants, integralization
//! - [`spectrum`]: the Salem number to geodesic length dictionary and bound calculators
//! - [`report`]: CSV and JSON report rows

pub mod arith;
pub mod census;
pub mod diophantine;
pub mod error;
pub mod poly;
pub mod quadform;
pub mod report;
pub mod spectrum;

pub use error::{Error, Result};
