//! Slope functions: μ_ω for ample polarisations, the fiber-degree slope μ_f,
//! and the two auxiliary slopes μ* and μ_* used by the comparators.
//!
//! Slopes take values in ℚ ∪ {+∞}, with +∞ assigned exactly when the
//! denominator class vanishes. Two +∞ values compare equal: classes with
//! vanishing denominator are handled by the torsion layers of the HN
//! machinery, not ordered among themselves.

use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;
use serde::ser::Serializer;
use serde::Serialize;

use crate::cohomology::{ChernCharacter, CohClass, DivisorClass};
use crate::error::Error;
use crate::geometry::Geometry;
use crate::rational::Rat;

/// A slope: finite exact rational or +∞.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SlopeValue {
    Finite(Rat),
    PlusInfinity,
}

impl SlopeValue {
    /// num / den, or +∞ when the denominator is zero.
    pub fn ratio(num: Rat, den: Rat) -> Self {
        match den.is_zero() {
            true => SlopeValue::PlusInfinity,
            false => SlopeValue::Finite(num / den),
        }
    }

    pub fn finite(value: Rat) -> Self {
        SlopeValue::Finite(value)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, SlopeValue::Finite(_))
    }

    pub fn as_finite(&self) -> Option<&Rat> {
        match self {
            SlopeValue::Finite(v) => Some(v),
            SlopeValue::PlusInfinity => None,
        }
    }
}

impl fmt::Display for SlopeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SlopeValue::Finite(v) => write!(f, "{v}"),
            SlopeValue::PlusInfinity => write!(f, "+inf"),
        }
    }
}

impl fmt::Debug for SlopeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for SlopeValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            SlopeValue::Finite(v) => v.serialize(serializer),
            SlopeValue::PlusInfinity => serializer.serialize_str("+inf"),
        }
    }
}

fn require_ample(w: &DivisorClass) -> Result<(), Error> {
    if !w.is_ample() {
        return Err(Error::NotAmple {
            alpha: w.alpha.to_string(),
            beta: w.beta.to_string(),
        });
    }
    Ok(())
}

/// Class of a fiber of the projection to the base factor.
fn fiber_class(geometry: Geometry) -> CohClass {
    let (_, cols) = geometry.shape();
    CohClass::basis(geometry, 0, cols - 1)
}

/// μ_ω = c1 · ω^(dim−1) / rank, computed through the intersection ring.
///
/// Requires ω ample; +∞ when the rank vanishes.
pub fn mu_omega(ch: &ChernCharacter, w: &DivisorClass) -> Result<SlopeValue, Error> {
    require_ample(w)?;
    let geometry = ch.geometry();
    let w_class = w.as_coh(geometry);
    let mut power = w_class.clone();
    for _ in 2..geometry.dim() {
        power = power.cup(&w_class)?;
    }
    let num = ch.c1_class().pairing(&power)?;
    Ok(SlopeValue::ratio(num, Rat::from(ch.rank())))
}

/// Slope of the transform, by the closed formula rather than by transforming.
///
/// Threefold: 2d (−a00/a10 · α'² + a11/a10 · 2α'β'). Always equal to
/// `mu_omega(fm_transform(ch), w)`; the redundancy is the point — the two
/// routes cross-check each other.
pub fn mu_omega_of_transform(ch: &ChernCharacter, w: &DivisorClass) -> Result<SlopeValue, Error> {
    require_ample(w)?;
    let a = &w.alpha;
    let b = &w.beta;
    match ch.geometry() {
        Geometry::Threefold { d } => {
            let two_d = Rat::from_int(2 * i64::from(d.get()));
            let num = two_d
                * (&(&-Rat::from(ch.entry(0, 0)) * &(a * a))
                    + &(Rat::from(ch.entry(1, 1)) * Rat::from_int(2) * a * b));
            Ok(SlopeValue::ratio(num, Rat::from(ch.entry(1, 0))))
        }
        Geometry::Surface { .. } => {
            let num = &(-Rat::from(ch.entry(0, 0)) * a) + &(Rat::from(ch.entry(1, 1)) * b);
            Ok(SlopeValue::ratio(num, Rat::from(ch.entry(1, 0))))
        }
    }
}

/// μ_f = c1 · f / rank, the fiber degree per unit rank.
pub fn mu_f(ch: &ChernCharacter) -> SlopeValue {
    let num = ch
        .c1_class()
        .pairing(&fiber_class(ch.geometry()))
        .expect("same geometry by construction");
    SlopeValue::ratio(num, Rat::from(ch.rank()))
}

/// μ* = c1 · H · D / rank (threefold) or c1 · h / rank (surface).
pub fn mu_upper_star(ch: &ChernCharacter) -> SlopeValue {
    let geometry = ch.geometry();
    let h = CohClass::basis(geometry, 1, 0);
    let num = match geometry {
        Geometry::Threefold { .. } => {
            let d_class = CohClass::basis(geometry, 0, 1);
            let hd = h.cup(&d_class).expect("same geometry");
            ch.c1_class().pairing(&hd).expect("same geometry")
        }
        Geometry::Surface { .. } => ch.c1_class().pairing(&h).expect("same geometry"),
    };
    SlopeValue::ratio(num, Rat::from(ch.rank()))
}

/// μ_* = ch2 · D / (c1 · D²) on the threefold; on the surface the analogous
/// ratio ∫ch2 / (c1 · f). In matrix entries both come out as a11 / a10.
pub fn mu_lower_star(ch: &ChernCharacter) -> SlopeValue {
    let geometry = ch.geometry();
    match geometry {
        Geometry::Threefold { .. } => {
            let d_class = CohClass::basis(geometry, 0, 1);
            let num = ch.ch2_class().pairing(&d_class).expect("same geometry");
            let dd = d_class.cup(&d_class).expect("same geometry");
            let den = ch.c1_class().pairing(&dd).expect("same geometry");
            SlopeValue::ratio(num, den)
        }
        Geometry::Surface { .. } => {
            let num = ch.ch2_class().integrate();
            let den = ch
                .c1_class()
                .pairing(&fiber_class(geometry))
                .expect("same geometry");
            SlopeValue::ratio(num, den)
        }
    }
}

/// Predicted WIT behaviour of a μ_f-semistable torsion-free class, from the
/// sign of μ_f. A prediction label, not a proof of WIT-ness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Trichotomy {
    PredictWit0,
    PredictBoundary,
    PredictWit1,
}

pub fn slope_trichotomy(ch: &ChernCharacter) -> Result<Trichotomy, Error> {
    if ch.rank().is_zero() {
        return Err(Error::RankZero);
    }
    let slope = mu_f(ch);
    let v = slope.as_finite().expect("nonzero rank gives a finite slope");
    Ok(match v.signum().cmp(&0) {
        Ordering::Greater => Trichotomy::PredictWit0,
        Ordering::Equal => Trichotomy::PredictBoundary,
        Ordering::Less => Trichotomy::PredictWit1,
    })
}

/// Every slope in one struct, as the CLI prints them.
#[derive(Clone, Debug, Serialize)]
pub struct SlopeTable {
    pub mu_omega: SlopeValue,
    pub mu_f: SlopeValue,
    pub mu_upper_star: SlopeValue,
    pub mu_lower_star: SlopeValue,
}

pub fn slope_table(ch: &ChernCharacter, w: &DivisorClass) -> Result<SlopeTable, Error> {
    Ok(SlopeTable {
        mu_omega: mu_omega(ch, w)?,
        mu_f: mu_f(ch),
        mu_upper_star: mu_upper_star(ch),
        mu_lower_star: mu_lower_star(ch),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform::fm_transform;
    use num_bigint::BigInt;

    fn ch3(d: u32, rows: [[i64; 3]; 2]) -> ChernCharacter {
        ChernCharacter::from_i64_rows(Geometry::threefold(d), &[&rows[0], &rows[1]]).unwrap()
    }

    #[test]
    fn slope_value_total_order() {
        let inf = SlopeValue::PlusInfinity;
        let five = SlopeValue::finite(Rat::from_int(5));
        let million = SlopeValue::finite(Rat::from_int(1_000_000));
        assert!(inf > million);
        assert!(five < million);
        assert_eq!(inf, SlopeValue::PlusInfinity);
        assert_eq!(
            SlopeValue::ratio(Rat::from_int(6), Rat::from_int(2)),
            SlopeValue::finite(Rat::from_int(3))
        );
        assert_eq!(
            SlopeValue::ratio(Rat::one(), Rat::zero()),
            SlopeValue::PlusInfinity
        );
    }

    #[test]
    fn mu_omega_matches_the_closed_slope_formula() {
        // d = 1, ω = (1,1), a00 = a01 = a10 = 1: 2(1·1 + 1·2) = 6
        let ch = ch3(1, [[1, 1, 0], [1, 0, 0]]);
        let w = DivisorClass::new(Rat::one(), Rat::one());
        assert_eq!(
            mu_omega(&ch, &w).unwrap(),
            SlopeValue::finite(Rat::from_int(6))
        );

        // rank zero gives +∞
        let torsion = ch3(1, [[0, 2, 0], [1, 0, 0]]);
        assert_eq!(mu_omega(&torsion, &w).unwrap(), SlopeValue::PlusInfinity);

        // c1 = 0 gives slope 0
        let line = ch3(1, [[1, 0, 0], [0, 0, 0]]);
        assert_eq!(mu_omega(&line, &w).unwrap(), SlopeValue::finite(Rat::zero()));

        // ample precondition enforced
        let bad = DivisorClass::new(Rat::one(), Rat::zero());
        assert!(matches!(mu_omega(&ch, &bad), Err(Error::NotAmple { .. })));
    }

    #[test]
    fn transform_slope_closed_formula() {
        // d = 1, ω' = (1,1), a00 = 1, a10 = 1, a11 = 2: 2(−1 + 4) = 6
        let ch = ch3(1, [[1, 0, 0], [1, 2, 0]]);
        let w = DivisorClass::new(Rat::one(), Rat::one());
        assert_eq!(
            mu_omega_of_transform(&ch, &w).unwrap(),
            SlopeValue::finite(Rat::from_int(6))
        );
        // rank of the transform is a10; zero gives +∞
        let flat = ch3(1, [[1, 0, 0], [0, 2, 0]]);
        assert_eq!(
            mu_omega_of_transform(&flat, &w).unwrap(),
            SlopeValue::PlusInfinity
        );
        // e1⊗f0 transforms to the unit row: slope 0 for every polarisation
        let sec = ch3(1, [[0, 0, 0], [1, 0, 0]]);
        for (a, b) in [(1i64, 1i64), (2, 3), (7, 1)] {
            let w = DivisorClass::new(Rat::from_int(a), Rat::from_int(b));
            assert_eq!(
                mu_omega_of_transform(&sec, &w).unwrap(),
                SlopeValue::finite(Rat::zero())
            );
        }
    }

    #[test]
    fn transform_slope_agrees_with_transform_then_slope() {
        let w = DivisorClass::new(Rat::new(3, 2), Rat::new(1, 3));
        for d in [1u32, 2] {
            for a10 in -2i64..=2 {
                for a11 in -2i64..=2 {
                    let ch = ch3(d, [[1, -1, 2], [a10, a11, 3]]);
                    assert_eq!(
                        mu_omega_of_transform(&ch, &w).unwrap(),
                        mu_omega(&fm_transform(&ch), &w).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn auxiliary_slopes_in_coordinates() {
        let ch = ch3(1, [[0, 0, 0], [2, 3, 7]]);
        assert_eq!(mu_lower_star(&ch), SlopeValue::finite(Rat::new(3, 2)));

        let ch = ch3(1, [[1, 2, 3], [4, 5, 6]]);
        assert_eq!(mu_f(&ch), SlopeValue::finite(Rat::from_int(4)));
        // μ* keeps the 2d factor: 2d·a01/a00 = 2·2/1
        assert_eq!(mu_upper_star(&ch), SlopeValue::finite(Rat::from_int(4)));

        let torsion = ch3(1, [[0, 1, 0], [0, 0, 0]]);
        assert_eq!(mu_upper_star(&torsion), SlopeValue::PlusInfinity);
    }

    #[test]
    fn fiber_degree_becomes_rank_under_the_transform() {
        for a10 in -3i64..=3 {
            let ch = ch3(1, [[2, 1, 0], [a10, 0, 1]]);
            assert_eq!(fm_transform(&ch).rank(), &BigInt::from(a10));
        }
    }

    #[test]
    fn trichotomy_follows_the_fiber_slope_sign() {
        assert_eq!(
            slope_trichotomy(&ch3(1, [[1, 0, 0], [2, 0, 0]])).unwrap(),
            Trichotomy::PredictWit0
        );
        assert_eq!(
            slope_trichotomy(&ch3(1, [[1, 5, 0], [0, 1, 0]])).unwrap(),
            Trichotomy::PredictBoundary
        );
        assert_eq!(
            slope_trichotomy(&ch3(1, [[1, 0, 0], [-2, 0, 0]])).unwrap(),
            Trichotomy::PredictWit1
        );
        assert!(matches!(
            slope_trichotomy(&ch3(1, [[0, 0, 0], [1, 0, 0]])),
            Err(Error::RankZero)
        ));
    }

    #[test]
    fn slopes_are_scale_invariant() {
        let ch = ch3(2, [[2, -1, 3], [4, 5, -6]]);
        let w = DivisorClass::new(Rat::new(2, 1), Rat::new(1, 2));
        for k in [2i64, 3, 10] {
            let scaled = ch.scale_int(k);
            assert_eq!(mu_omega(&ch, &w).unwrap(), mu_omega(&scaled, &w).unwrap());
            assert_eq!(mu_f(&ch), mu_f(&scaled));
            assert_eq!(mu_upper_star(&ch), mu_upper_star(&scaled));
            assert_eq!(mu_lower_star(&ch), mu_lower_star(&scaled));
        }
    }

    #[test]
    fn surface_slopes() {
        let g = Geometry::surface(1);
        let ch = ChernCharacter::from_i64_rows(g, &[&[2, 3], &[4, 5]]).unwrap();
        assert_eq!(mu_f(&ch), SlopeValue::finite(Rat::from_int(2)));
        assert_eq!(mu_upper_star(&ch), SlopeValue::finite(Rat::new(3, 2)));
        assert_eq!(mu_lower_star(&ch), SlopeValue::finite(Rat::new(5, 4)));
        let w = DivisorClass::new(Rat::from_int(3), Rat::one());
        // c1·ω / rk = (3·4 + 1·3)/2
        assert_eq!(
            mu_omega(&ch, &w).unwrap(),
            SlopeValue::finite(Rat::new(15, 2))
        );
        assert_eq!(
            mu_omega_of_transform(&ch, &w).unwrap(),
            mu_omega(&fm_transform(&ch), &w).unwrap()
        );
    }
}
