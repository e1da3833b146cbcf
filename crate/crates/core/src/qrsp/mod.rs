//! Divided power envelopes of semiperfect presentations and the graded
//! comparison with the divided power algebra on the conormal module.
//!
//! The presentations are (P, I) with P a truncated perfection of a
//! polynomial ring over F_p (exponents carry denominator p^precision) and
//! I generated by the variables, which form a regular sequence. The
//! envelope D is computed with exact divided-power bookkeeping; its
//! quotient modulo the ideal carries the level filtration whose graded
//! pieces the divided power algebra on I/I^2 describes after a Frobenius
//! twist. All verifications are exact.

mod check;
mod gamma;
mod pd;

pub use check::{
    lift_independence, sign_identity_check, verify_filtered_iso, FilteredIsoReport,
    GradedPieceCheck, LiftIndependenceReport, SignIdentityReport,
};
pub use gamma::{lifted_class, GammaAlgebra, GammaElement};
pub use pd::{PdElement, PdRing, PerfectionRing};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QrspError {
    #[error("exponent {exponent} of variable {variable} is not divisible by p")]
    NotDivisible { variable: usize, exponent: u32 },
    #[error("level {level} overflows the ring truncation cap {cap}")]
    LevelAboveCap { level: usize, cap: usize },
}
