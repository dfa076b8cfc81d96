//! Error type shared by the lattice, transform, slope, and comparator modules.

use thiserror::Error;

use crate::geometry::Geometry;
use crate::poly::FormalParam;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("geometry mismatch: {left} vs {right}")]
    GeometryMismatch { left: Geometry, right: Geometry },

    #[error("operation requires {expected} geometry, got {found}")]
    WrongGeometry {
        expected: &'static str,
        found: Geometry,
    },

    #[error("matrix shape {rows}x{cols} does not match the geometry (expected {expected_rows}x{expected_cols})")]
    ShapeMismatch {
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },

    #[error("Chern character entries must be integral; entry ({i},{j}) is {value}")]
    NonIntegralEntry { i: usize, j: usize, value: String },

    #[error("polarisation ({alpha}, {beta}) is not ample")]
    NotAmple { alpha: String, beta: String },

    #[error("operation undefined for rank-zero classes")]
    RankZero,

    #[error("codimension {0} out of range (expected 0, 1, or 2)")]
    InvalidCodim(u8),

    #[error("formal parameter mismatch: {left} vs {right}")]
    ParamMismatch {
        left: FormalParam,
        right: FormalParam,
    },

    #[error("denominator pairing polynomial vanishes identically for the {side} class")]
    VanishingDenominator { side: &'static str },

    #[error("comparison case requires {requirement}")]
    CaseMismatch { requirement: &'static str },

    #[error("decomposition parts do not sum to the ambient class")]
    PartsSumMismatch,

    #[error("part {index} violates the necessary positivity of a torsion-sheaf class ({constraint})")]
    PartPositivity { index: usize, constraint: &'static str },

    #[error("class does not match a Serre-closed zero pattern (expected (0,0,0;*,*,*) or (0,0,*;*,*,*))")]
    SerrePatternMismatch,

    #[error("enumeration bound {bound} is smaller than the largest entry magnitude {needed}")]
    BoundTooSmall { bound: u32, needed: String },
}
