//! Asymptotic Gieseker comparisons for fiber-like polarisations.
//!
//! For ω = H + nD on the threefold (resp. ω = h + sf on the surface),
//! semistability "for n ≫ 0" is decided by comparing reduced Hilbert
//! polynomials whose coefficients are rational functions of the fiber weight.
//! Everything reduces to eventual signs of exact polynomials: first the m-
//! coefficients from the top degree down, then within each coefficient the
//! weight powers from the top down. The deciding coefficient is reported as a
//! witness, and a threshold N₀ beyond which plain numeric evaluation must
//! agree is derived from Cauchy bounds — never guessed.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::cohomology::{hilbert_polynomial_formal, ChernCharacter, CohClass};
use crate::error::Error;
use crate::rational::Rat;

/// How the candidate subobject class compares against the ambient class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    /// The candidate's reduced Hilbert polynomial eventually exceeds.
    Destabilizes,
    /// Identical reduced polynomials: a numerical wall, not instability.
    Neutral,
    /// Strictly below for all large parameters.
    StrictlyBelow,
}

/// Which staged test decided a comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// Deciding entry of the threefold 5-entry lexicographic vector.
    LexIndex(usize),
    /// 2-dim: the cubic (n³) coefficients of the cleared inequality differ.
    NCubed,
    /// 2-dim: cubic tie, n² coefficients differ.
    NSquared,
    /// 2-dim: n¹ coefficients differ.
    NLinear,
    /// 2-dim: full slope tie, χ-normalized constant decides.
    EulerTiebreak,
    /// Surface torsion-free: c1·f / rank.
    FiberSlope,
    /// Surface torsion-free: c1·h / rank.
    SectionSlope,
    /// Surface torsion-free: χ / rank.
    EulerPerRank,
    /// Surface 1-dimensional: χ against fiber degree, cross-multiplied.
    EulerVsFiber,
    /// Surface 1-dimensional: χ against section degree, cross-multiplied.
    EulerVsSection,
}

/// Result of a staged comparison. `witness` is absent exactly for `Neutral`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub outcome: Outcome,
    pub witness: Option<Witness>,
}

impl Verdict {
    fn neutral() -> Self {
        Verdict {
            outcome: Outcome::Neutral,
            witness: None,
        }
    }

    fn decided(sign: i32, witness: Witness) -> Self {
        let outcome = if sign > 0 {
            Outcome::Destabilizes
        } else {
            Outcome::StrictlyBelow
        };
        Verdict {
            outcome,
            witness: Some(witness),
        }
    }
}

/// The 5-entry vector whose lexicographic order decides ω-semistability for
/// n ≫ 0 on the threefold:
/// (c1·D²/rk, c1·H·D/rk, ch2·D/rk, ch2·H/rk, χ/rk), with td1 = 0 substituted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexVector3D {
    pub entries: [Rat; 5],
}

/// Compute the lexicographic vector through the intersection ring.
///
/// Defined only for nonzero rank.
pub fn lex_vector_3d(ch: &ChernCharacter) -> Result<LexVector3D, Error> {
    let geometry = ch.geometry();
    if !geometry.is_threefold() {
        return Err(Error::WrongGeometry {
            expected: "threefold",
            found: geometry,
        });
    }
    if ch.rank().is_zero() {
        return Err(Error::RankZero);
    }
    let rk = Rat::from(ch.rank());
    let d_class = CohClass::basis(geometry, 0, 1);
    let h_class = CohClass::basis(geometry, 1, 0);
    let dd = d_class.cup(&d_class)?;
    let hd = h_class.cup(&d_class)?;
    let c1 = ch.c1_class();
    let ch2 = ch.ch2_class();
    let entries = [
        c1.pairing(&dd)? / rk.clone(),
        c1.pairing(&hd)? / rk.clone(),
        ch2.pairing(&d_class)? / rk.clone(),
        ch2.pairing(&h_class)? / rk.clone(),
        ch.euler_characteristic() / rk,
    ];
    Ok(LexVector3D { entries })
}

fn check_same_geometry(sub: &ChernCharacter, ambient: &ChernCharacter) -> Result<(), Error> {
    if sub.geometry() != ambient.geometry() {
        return Err(Error::GeometryMismatch {
            left: sub.geometry(),
            right: ambient.geometry(),
        });
    }
    Ok(())
}

/// Lexicographic comparison of the two 5-vectors: Greater at the first
/// differing index destabilizes.
pub fn destabilizes_3d(sub: &ChernCharacter, ambient: &ChernCharacter) -> Result<Verdict, Error> {
    check_same_geometry(sub, ambient)?;
    let vs = lex_vector_3d(sub)?;
    let ve = lex_vector_3d(ambient)?;
    for (i, (a, b)) in vs.entries.iter().zip(&ve.entries).enumerate() {
        if a != b {
            let sign = if a > b { 1 } else { -1 };
            return Ok(Verdict::decided(sign, Witness::LexIndex(i)));
        }
    }
    Ok(Verdict::neutral())
}

/// Internal engine: compare reduced Hilbert polynomials with the fiber weight
/// left formal.
///
/// The reduced polynomial is P(m)/L where L is the m-top coefficient, itself
/// a polynomial in the weight. Subtracting the two reduced polynomials and
/// clearing denominators (with eventual-sign correction, since nothing here
/// assumes the leading coefficients are positive) turns each m-coefficient
/// comparison into the eventual sign of one exact polynomial.
struct ReducedComparison {
    outcome: Outcome,
    /// (m-degree of the deciding coefficient, weight-degree that decided).
    deciding: Option<(usize, usize)>,
    /// Numeric evaluation of both reduced polynomials agrees with the
    /// verdict at every weight ≥ this bound.
    threshold: BigInt,
}

fn reduced_comparison(
    sub: &ChernCharacter,
    ambient: &ChernCharacter,
    degree: usize,
) -> Result<ReducedComparison, Error> {
    check_same_geometry(sub, ambient)?;
    let fs = hilbert_polynomial_formal(sub);
    let fe = hilbert_polynomial_formal(ambient);
    for k in (degree + 1)..=sub.geometry().dim() {
        if !fs.m_coeff(k).is_zero() || !fe.m_coeff(k).is_zero() {
            return Err(Error::CaseMismatch {
                requirement: "classes of the stated dimension",
            });
        }
    }
    let l_sub = fs.m_coeff(degree);
    let l_amb = fe.m_coeff(degree);
    if l_sub.is_zero() {
        return Err(Error::VanishingDenominator { side: "subobject" });
    }
    if l_amb.is_zero() {
        return Err(Error::VanishingDenominator { side: "ambient" });
    }
    let sign_correction = l_sub.eventual_sign() * l_amb.eventual_sign();

    let mut bound = l_sub.sign_threshold().max(l_amb.sign_threshold());
    let mut verdict: Option<(i32, usize, usize)> = None;
    for k in (0..degree).rev() {
        let cleared = &(&fs.m_coeff(k) * &l_amb) - &(&fe.m_coeff(k) * &l_sub);
        bound = bound.max(cleared.sign_threshold());
        if verdict.is_none() && !cleared.is_zero() {
            let weight_deg = cleared.degree().expect("nonzero polynomial has a degree");
            verdict = Some((cleared.eventual_sign() * sign_correction, k, weight_deg));
        }
    }
    let threshold = bound.ceil().max(BigInt::one());
    Ok(match verdict {
        None => ReducedComparison {
            outcome: Outcome::Neutral,
            deciding: None,
            threshold,
        },
        Some((sign, k, weight_deg)) => ReducedComparison {
            outcome: if sign > 0 {
                Outcome::Destabilizes
            } else {
                Outcome::StrictlyBelow
            },
            deciding: Some((k, weight_deg)),
            threshold,
        },
    })
}

/// 2-dimensional comparison on the threefold, with the derived threshold.
///
/// Both classes must be torsion (rank zero) with a fiber-degree pairing that
/// is not identically zero as a polynomial in n.
pub fn destabilizes_2d_with_threshold(
    sub: &ChernCharacter,
    ambient: &ChernCharacter,
) -> Result<(Verdict, BigInt), Error> {
    if !sub.geometry().is_threefold() {
        return Err(Error::WrongGeometry {
            expected: "threefold",
            found: sub.geometry(),
        });
    }
    for ch in [sub, ambient] {
        if !ch.rank().is_zero() {
            return Err(Error::CaseMismatch {
                requirement: "rank zero on both classes",
            });
        }
    }
    let cmp = reduced_comparison(sub, ambient, 2)?;
    let verdict = match cmp.deciding {
        None => Verdict::neutral(),
        Some((1, 3)) => Verdict::decided(outcome_sign(cmp.outcome), Witness::NCubed),
        Some((1, 2)) => Verdict::decided(outcome_sign(cmp.outcome), Witness::NSquared),
        Some((1, _)) => Verdict::decided(outcome_sign(cmp.outcome), Witness::NLinear),
        Some((0, _)) => Verdict::decided(outcome_sign(cmp.outcome), Witness::EulerTiebreak),
        Some((k, _)) => unreachable!("deciding m-degree {k} above the comparison degree"),
    };
    Ok((verdict, cmp.threshold))
}

pub fn destabilizes_2d(sub: &ChernCharacter, ambient: &ChernCharacter) -> Result<Verdict, Error> {
    destabilizes_2d_with_threshold(sub, ambient).map(|(v, _)| v)
}

/// Which of the two surface comparison regimes applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SurfaceCase {
    /// Both classes have nonzero rank.
    TorsionFree,
    /// Both classes have rank zero; the ambient class has nonzero fiber
    /// degree.
    OneDimensional,
}

/// Surface comparison for ω = h + sf as s ≫ 0, staged per the classical
/// criteria, with the derived threshold.
pub fn surface_compare_with_threshold(
    sub: &ChernCharacter,
    ambient: &ChernCharacter,
    case: SurfaceCase,
) -> Result<(Verdict, BigInt), Error> {
    let geometry = sub.geometry();
    if geometry.is_threefold() {
        return Err(Error::WrongGeometry {
            expected: "surface",
            found: geometry,
        });
    }
    check_same_geometry(sub, ambient)?;
    let cmp = match case {
        SurfaceCase::TorsionFree => {
            for ch in [sub, ambient] {
                if ch.rank().is_zero() {
                    return Err(Error::CaseMismatch {
                        requirement: "nonzero rank on both classes",
                    });
                }
            }
            reduced_comparison(sub, ambient, 2)?
        }
        SurfaceCase::OneDimensional => {
            for ch in [sub, ambient] {
                if !ch.rank().is_zero() {
                    return Err(Error::CaseMismatch {
                        requirement: "rank zero on both classes",
                    });
                }
            }
            if ambient.entry(1, 0).is_zero() {
                return Err(Error::CaseMismatch {
                    requirement: "nonzero fiber degree on the ambient class",
                });
            }
            reduced_comparison(sub, ambient, 1)?
        }
    };
    let sign = outcome_sign(cmp.outcome);
    let verdict = match (case, cmp.deciding) {
        (_, None) => Verdict::neutral(),
        (SurfaceCase::TorsionFree, Some((1, 2))) => Verdict::decided(sign, Witness::FiberSlope),
        (SurfaceCase::TorsionFree, Some((1, _))) => Verdict::decided(sign, Witness::SectionSlope),
        (SurfaceCase::TorsionFree, Some((0, _))) => Verdict::decided(sign, Witness::EulerPerRank),
        (SurfaceCase::OneDimensional, Some((0, 1))) => {
            Verdict::decided(sign, Witness::EulerVsFiber)
        }
        (SurfaceCase::OneDimensional, Some((0, _))) => {
            Verdict::decided(sign, Witness::EulerVsSection)
        }
        (_, Some((k, j))) => unreachable!("deciding stage ({k},{j}) out of range for the case"),
    };
    Ok((verdict, cmp.threshold))
}

pub fn surface_compare(
    sub: &ChernCharacter,
    ambient: &ChernCharacter,
    case: SurfaceCase,
) -> Result<Verdict, Error> {
    surface_compare_with_threshold(sub, ambient, case).map(|(v, _)| v)
}

fn outcome_sign(outcome: Outcome) -> i32 {
    match outcome {
        Outcome::Destabilizes => 1,
        Outcome::Neutral => 0,
        Outcome::StrictlyBelow => -1,
    }
}

/// Reduced-Hilbert-polynomial comparison of nonzero-rank threefold classes by
/// the formal-weight engine. The lexicographic 5-vector route and this one
/// must always agree; keeping both callable makes the cross-check cheap.
pub fn destabilizes_3d_by_polynomials(
    sub: &ChernCharacter,
    ambient: &ChernCharacter,
) -> Result<Outcome, Error> {
    for ch in [sub, ambient] {
        if ch.rank().is_zero() {
            return Err(Error::RankZero);
        }
    }
    Ok(reduced_comparison(sub, ambient, 3)?.outcome)
}
