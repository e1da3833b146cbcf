//! Sparse multivariate polynomial arithmetic over prime fields F_p.
//!
//! Monomial order is graded lexicographic throughout: higher total degree
//! compares greater, ties are broken lexicographically with earlier
//! variables weighted heavier. Every routine that needs a leading term
//! (division, normal forms) uses this order, so results are canonical.

mod field;
mod hyper;
mod monomial;
mod parse;
mod poly;

pub use field::{FieldError, PrimeField, SUPPORTED_PRIMES};
pub use hyper::{Ambient, HypersurfaceError, HypersurfaceRing};
pub use monomial::{exponent_boxes, monomials_of_degree, Monomial};
pub use parse::{parse_poly, poly_to_string, ParseError};
pub use poly::{divide, FpPoly};
