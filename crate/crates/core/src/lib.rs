//! Exact computer algebra for characteristic-p geometry.
//!
//! The crate provides, in dependency order:
//!
//! - [`fpoly`]: sparse multivariate polynomials over small prime fields,
//!   with the p-power structure (Frobenius, p-th roots, p-basis
//!   decompositions) and normal forms modulo a single hypersurface equation;
//! - [`intpoly`]: exact integer-coefficient polynomials, used as
//!   characteristic-0 lifts for ghost-component computations;
//! - [`linalg`]: dense linear algebra over F_p (kernels, incremental solving);
//! - [`witt`]: p-typical Witt vectors W_n(R), their ring structure certified
//!   by ghost components, Frobenius/Verschiebung/Teichmuller, and the module
//!   structure of F_*W_n(R)/p with an explicit basis;
//! - [`splitting`]: Frobenius-splitting criteria for hypersurfaces, quadric
//!   splitting polynomials, point-counting oracles for plane cubics, and a
//!   graded linear-algebra search for quasi-F-splittings and heights;
//! - [`derham`]: de Rham complexes of polynomial charts, the Cartier
//!   operator in both directions, the chain-level decomposition attached to
//!   a Frobenius lift, and cohomology-level base-change checks;
//! - [`qrsp`]: divided power envelopes over perfections, the conjugate
//!   filtration, and the explicit divided-power splitting of its graded
//!   pieces.
//!
//! All arithmetic is exact. Randomized property checks draw from seeded
//! generators ([`sample`]) so every run is reproducible. [`suites`] bundles
//! the verification suites consumed by the test harness and the CLI.

pub mod exec;
pub mod fpoly;
pub mod intpoly;
pub mod linalg;
pub mod sample;

pub mod witt;

pub mod splitting;

pub mod derham;

pub mod qrsp;

pub mod suites;
