//! Polynomial differential forms in characteristic p, the Cartier
//! operators, and splittings of the de Rham complex induced by lifts of
//! Frobenius.
//!
//! Everything is graded by multidegree, which both d and the Cartier
//! operators respect, so every question reduces to small exact linear
//! algebra over F_p, one multidegree at a time. The combinatorial
//! cohomology count serves as an independent oracle for the honest
//! kernel-modulo-image computations.

mod cartier;
mod check;
mod form;
mod lift;

pub use cartier::{cartier, cartier_inverse, cohomology_dim, cohomology_dim_oracle};
pub use check::{
    fsplit_composite, verify_total_splitting, witt_basechange_check, BasechangeCheck,
    BasechangeReport, BidegreeCheck, CompositeCheck, CompositeReport, SplittingMap,
    TotalSplittingReport,
};
pub use form::Form;
pub(crate) use form::total_basis;
pub use lift::FrobeniusLift;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DerhamError {
    #[error("form is not closed: d has a nonzero component in multidegree {multidegree:?}")]
    NotClosed { multidegree: Vec<u32> },
    #[error("degree cap {cap} sees nothing: the first interesting degree is p = {p}")]
    DegreeCapTooSmall { cap: u32, p: u64 },
    #[error("a Frobenius lift needs one polynomial per variable, got {got} for {nvars}")]
    LiftArityMismatch { got: usize, nvars: usize },
    #[error("lift coordinate {index} must be zero or homogeneous of degree {degree} to respect the grading")]
    LiftNotGraded { index: usize, degree: u64 },
}
