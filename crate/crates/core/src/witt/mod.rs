//! p-typical Witt vectors of truncated length n over polynomial rings and
//! hypersurface quotients.
//!
//! Arithmetic never materializes the universal structural polynomials for a
//! concrete operation. Instead each operation lifts its operands to integer
//! coefficients, forms ghost components modulo p^(n+2), combines them there,
//! and peels Witt coordinates back out by exact division. Truncating the
//! modulus is sound: the coordinate peeled at stage i is determined modulo
//! p^(n+2-i), which is more than the single mod-p digit the quotient ring
//! needs. The universal polynomials are still available (and tested against
//! the evaluation route) through [`structural_polys`] for lengths where
//! expanding them is tractable.

mod ghost;
mod modp;
mod structural;
mod vector;

pub use modp::{express_class, BasisEntry, ModuleBasis};
pub use structural::{structural_polys, StructuralPolys};
pub use vector::{WittDisplay, WittRing, WittVector};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WittError {
    #[error("structural polynomials for p={p}, n={n} exceed the expansion budget; arithmetic still works through ghost evaluation")]
    StructuralExpansionInfeasible { p: u64, n: usize },
    #[error("Witt length must be at least 1, got {0}")]
    ZeroLength(usize),
    #[error("Witt length {0} exceeds the supported cap 4")]
    LengthTooLarge(usize),
}
