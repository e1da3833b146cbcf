//! Frobenius splitting criteria for hypersurface cones and the graded
//! search for splittings of Witt-vector Frobenius.
//!
//! The cheap criteria ([`cy_coefficient`], [`fedder_membership`], the
//! quadric section construction) read everything off a single polynomial
//! power. The expensive route ([`quasi_f_split_height`]) solves for an
//! honest module splitting degree by degree and either produces a witness
//! or a certificate that none exists at the given Witt length.

mod criteria;
mod elliptic;
mod search;

pub use criteria::{
    cy_coefficient, divides_exactly, fedder_membership, quadric_splitting, QuadricSplitting,
};
pub use elliptic::{
    is_supersingular_cubic, projective_point_count, rational_singular_point,
    sample_smooth_weierstrass, trace_of_frobenius, weierstrass_cubic, weierstrass_discriminant,
};
pub use search::{
    quasi_f_split_height, HeightOutcome, HeightReport, LevelOutcome, LevelSearch, SearchConfig,
    SplittingWitness, WitnessVerification,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SplittingError {
    #[error("input polynomial must be nonzero and homogeneous")]
    NotHomogeneous,
    #[error("criterion needs degree equal to the variable count, got degree {degree} in {nvars} variables")]
    DegreeMismatch { degree: u32, nvars: usize },
    #[error("quadrics are handled in projective dimension 2 through 4, got {0}")]
    UnsupportedDimension(usize),
    #[error("degree bound {bound} is below the equation degree {need}")]
    DegreeBoundTooSmall { bound: u64, need: u64 },
    #[error("hypersurface setup failed: {0}")]
    Hypersurface(#[from] crate::fpoly::HypersurfaceError),
}
