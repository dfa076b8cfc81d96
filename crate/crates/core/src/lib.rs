//! Exact-arithmetic stability calculus on trivial elliptic fibrations.
//!
//! The crate models the algebraic cohomology lattice of the product of an
//! elliptic curve with a Picard-rank-1 K3 surface (and the analogous product
//! surface over a curve), together with:
//!
//! - the cohomological Fourier-Mukai transform and its inverse,
//! - slope functions for arbitrary ample polarisations, with exact +∞,
//! - asymptotic Gieseker comparators for fiber-like polarisations, decided by
//!   exact polynomial sign instead of numeric cutoffs,
//! - positivity classifiers for torsion-sheaf Chern patterns,
//! - a Harder-Narasimhan engine for finite subobject lattices carrying a
//!   slope-like label, with a brute-force exhaustion oracle,
//! - brute-force verifiers for the algebraic identities behind the
//!   semistability-preservation statements, over bounded integer boxes.
//!
//! All arithmetic is exact (arbitrary-precision rationals); nothing here
//! touches floating point. With the default `parallel` feature the box scans
//! run on rayon; disabling it gives a dependency-free sequential fallback
//! with identical output.

pub mod cohomology;
pub mod error;
pub mod geometry;
pub mod gieseker;
pub mod hn;
pub mod poly;
pub mod positivity;
pub mod rational;
pub mod scan;
pub mod slope;
pub mod transform;
pub mod verify;

pub use cohomology::{ChernCharacter, CohClass, DivisorClass};
pub use error::Error;
pub use geometry::Geometry;
pub use rational::Rat;
