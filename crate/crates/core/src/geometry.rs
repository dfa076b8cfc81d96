//! Ambient geometry: the product threefold and the product surface.

use std::fmt;
use std::num::NonZeroU32;

use serde::{Deserialize, Serialize};

/// The ambient space the lattice lives on.
///
/// `Threefold` is the product of an elliptic curve with a Picard-rank-1 K3
/// surface whose ample generator has self-intersection 2d. `Surface` is the
/// product of an elliptic curve with a smooth projective curve of the given
/// genus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Geometry {
    Threefold { d: NonZeroU32 },
    Surface { g: u32 },
}

impl Geometry {
    /// Threefold with K3 degree parameter d ≥ 1.
    pub fn threefold(d: u32) -> Self {
        Geometry::Threefold {
            d: NonZeroU32::new(d).expect("K3 degree parameter d must be at least 1"),
        }
    }

    /// Surface over a base curve of the given genus.
    pub fn surface(genus: u32) -> Self {
        Geometry::Surface { g: genus }
    }

    pub fn is_threefold(&self) -> bool {
        matches!(self, Geometry::Threefold { .. })
    }

    /// d, with H_S^2 = 2d on the K3 factor. Only meaningful on the threefold.
    pub fn k3_degree(&self) -> Option<u32> {
        match self {
            Geometry::Threefold { d } => Some(d.get()),
            Geometry::Surface { .. } => None,
        }
    }

    pub fn genus(&self) -> Option<u32> {
        match self {
            Geometry::Threefold { .. } => None,
            Geometry::Surface { g } => Some(*g),
        }
    }

    /// Basis matrix shape: (rows = curve factor, cols = base factor).
    pub fn shape(&self) -> (usize, usize) {
        match self {
            Geometry::Threefold { .. } => (2, 3),
            Geometry::Surface { .. } => (2, 2),
        }
    }

    /// Complex dimension of the ambient space.
    pub fn dim(&self) -> usize {
        match self {
            Geometry::Threefold { .. } => 3,
            Geometry::Surface { .. } => 2,
        }
    }

    /// Index (i, j) of the top-degree basis class.
    pub fn top_index(&self) -> (usize, usize) {
        let (rows, cols) = self.shape();
        (rows - 1, cols - 1)
    }
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Geometry::Threefold { d } => write!(f, "threefold(d={d})"),
            Geometry::Surface { g } => write!(f, "surface(g={g})"),
        }
    }
}
