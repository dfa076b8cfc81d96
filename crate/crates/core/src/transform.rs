//! The cohomological Fourier-Mukai transform on the Künneth lattice.
//!
//! On the curve factor the transform sends (a_0, a_1) to (a_1, -a_0) and acts
//! trivially on the base factor, so on the matrix form it swaps the rows and
//! negates the new second row. Applying it twice gives -identity: the
//! geometric square is the pullback along the group inverse composed with a
//! shift, and the shift is what contributes the global sign here.

use crate::cohomology::{ChernCharacter, CohClass};
use crate::error::Error;
use crate::rational::Rat;

/// Image of a Chern character under the cohomological transform:
/// (row_0; row_1) ↦ (row_1; -row_0).
pub fn fm_transform(ch: &ChernCharacter) -> ChernCharacter {
    let (_, cols) = ch.geometry().shape();
    let mut out = ChernCharacter::zero(ch.geometry());
    for j in 0..cols {
        out.set_entry(0, j, ch.entry(1, j).clone());
        out.set_entry(1, j, -ch.entry(0, j));
    }
    out
}

/// Inverse of `fm_transform` on the lattice: -fm_transform.
///
/// The square of the transform is -identity, so negate-then-transform (in
/// either order) inverts it.
pub fn fm_inverse(ch: &ChernCharacter) -> ChernCharacter {
    fm_transform(ch).neg()
}

/// Which degree a WIT sheaf's transform is concentrated in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitClass {
    Wit0,
    Wit1,
}

/// Necessary sign condition on ch_{1,c} · D^(2-c) for a WIT sheaf supported
/// over a base locus of codimension c.
///
/// For a WIT_1 sheaf the pairing must be ≤ 0 (the transform's rank-like entry
/// in that codimension is minus this number and must be nonnegative); for
/// WIT_0 the inequality reverses. This is a necessary condition only — it
/// never certifies WIT-ness.
pub fn wit_sign_check(ch: &ChernCharacter, wit: WitClass, codim: u8) -> Result<bool, Error> {
    let geometry = ch.geometry();
    if !geometry.is_threefold() {
        return Err(Error::WrongGeometry {
            expected: "threefold",
            found: geometry,
        });
    }
    if codim > 2 {
        return Err(Error::InvalidCodim(codim));
    }
    let c = codim as usize;
    let mut part = CohClass::zero(geometry);
    part.set(1, c, Rat::from(ch.entry(1, c)));
    let d_class = CohClass::basis(geometry, 0, 1);
    let mut paired = part;
    for _ in 0..(2 - c) {
        paired = paired.cup(&d_class)?;
    }
    let value = paired.integrate();
    Ok(match wit {
        WitClass::Wit1 => !value.is_positive(),
        WitClass::Wit0 => !value.is_negative(),
    })
}
