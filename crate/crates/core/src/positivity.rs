//! Numerical positivity patterns for torsion-sheaf Chern characters on the
//! threefold, the Serre-closure arithmetic they force, and the admissible
//! subcharacter generator built on them.
//!
//! Each pattern case is a necessary condition: a sheaf class matching the
//! zero pattern must satisfy the sign constraints, but passing them proves
//! nothing about realizability. All sign tests go through the intersection
//! pairings rather than raw matrix entries, so they survive any change of
//! basis convention.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::cohomology::{ChernCharacter, CohClass};
use crate::error::Error;
use crate::geometry::Geometry;
use crate::rational::Rat;

/// One of the eight zero-pattern cases, with its sign constraints and the
/// support conclusion the pattern carries.
#[derive(Clone, Copy, Debug)]
pub struct PatternCase {
    pub id: u8,
    /// Entries required to vanish for the case to apply.
    pub zero_entries: &'static [(usize, usize)],
    /// Entries whose pairing must be nonnegative when the case applies.
    pub sign_entries: &'static [(usize, usize)],
    /// What the pattern says about the support of a genuine sheaf.
    pub support: &'static str,
}

pub const PATTERN_CASES: [PatternCase; 8] = [
    PatternCase {
        id: 1,
        zero_entries: &[(0, 0)],
        sign_entries: &[(0, 1), (1, 0)],
        support: "torsion sheaf",
    },
    PatternCase {
        id: 2,
        zero_entries: &[(0, 0), (0, 1)],
        sign_entries: &[(0, 2), (1, 0)],
        support: "restrictions to all but finitely many fibers are 0-dimensional",
    },
    PatternCase {
        id: 3,
        zero_entries: &[(0, 0), (0, 1), (0, 2)],
        sign_entries: &[(1, 0)],
        support: "restrictions to all fibers are 0-dimensional",
    },
    PatternCase {
        id: 4,
        zero_entries: &[(0, 0), (1, 0)],
        sign_entries: &[(0, 1)],
        support: "vanishes on the generic fiber",
    },
    PatternCase {
        id: 5,
        zero_entries: &[(0, 0), (0, 1), (1, 0)],
        sign_entries: &[(0, 2), (1, 1)],
        support: "supported in dimension at most 1",
    },
    PatternCase {
        id: 6,
        zero_entries: &[(0, 0), (0, 1), (1, 0), (1, 1)],
        sign_entries: &[(0, 2)],
        support: "supported on finitely many fibers",
    },
    PatternCase {
        id: 7,
        zero_entries: &[(0, 0), (0, 1), (0, 2), (1, 0)],
        sign_entries: &[],
        support: "supported in dimension at most 1, 0-dimensional on every fiber",
    },
    PatternCase {
        id: 8,
        zero_entries: &[(0, 0), (0, 1), (0, 2), (1, 0), (1, 1)],
        sign_entries: &[(1, 2)],
        support: "supported at finitely many points",
    },
];

/// The pairing that isolates a given matrix entry, up to a positive factor.
///
/// a01 ↔ c1·H·D, a10 ↔ c1·D², a02 ↔ ch2·H, a11 ↔ ch2·D, a12 ↔ ∫ch3.
pub fn entry_pairing(ch: &ChernCharacter, entry: (usize, usize)) -> Rat {
    let geometry = ch.geometry();
    let d_class = CohClass::basis(geometry, 0, 1);
    let h_class = CohClass::basis(geometry, 1, 0);
    let pair = |part: CohClass, with: &CohClass| {
        part.cup(with).expect("same geometry").integrate()
    };
    match entry {
        (0, 1) => pair(
            ch.c1_class(),
            &h_class.cup(&d_class).expect("same geometry"),
        ),
        (1, 0) => pair(
            ch.c1_class(),
            &d_class.cup(&d_class).expect("same geometry"),
        ),
        (0, 2) => pair(ch.ch2_class(), &h_class),
        (1, 1) => pair(ch.ch2_class(), &d_class),
        (1, 2) => ch.as_coh().graded_component(3).integrate(),
        _ => Rat::from(ch.entry(entry.0, entry.1)),
    }
}

/// Result of evaluating one pattern case on a class.
#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub case_id: u8,
    pub passed: bool,
    /// First violated sign constraint, as a matrix index, when failing.
    pub violated: Option<(usize, usize)>,
    pub support: &'static str,
}

/// Evaluate every case whose zero pattern matches the class.
///
/// A class that matches a case but violates its sign constraints is not the
/// class of any coherent sheaf.
pub fn classify_pattern(ch: &ChernCharacter) -> Result<Vec<CaseReport>, Error> {
    if !ch.geometry().is_threefold() {
        return Err(Error::WrongGeometry {
            expected: "threefold",
            found: ch.geometry(),
        });
    }
    let mut reports = Vec::new();
    for case in &PATTERN_CASES {
        if case
            .zero_entries
            .iter()
            .any(|&(i, j)| !ch.entry(i, j).is_zero())
        {
            continue;
        }
        let violated = case
            .sign_entries
            .iter()
            .copied()
            .find(|&e| entry_pairing(ch, e).is_negative());
        reports.push(CaseReport {
            case_id: case.id,
            passed: violated.is_none(),
            violated,
            support: case.support,
        });
    }
    Ok(reports)
}

/// Does the class pass every pattern case it matches?
pub fn passes_all_matched_cases(ch: &ChernCharacter) -> Result<bool, Error> {
    Ok(classify_pattern(ch)?.iter().all(|r| r.passed))
}

/// One pairing of one part forced to vanish by the closure arithmetic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ForcedZero {
    pub part: usize,
    pub pairing: &'static str,
}

/// Certificate produced by `serre_closure_check`.
#[derive(Clone, Debug, Serialize)]
pub struct SerreClosure {
    pub holds: bool,
    pub forced: Vec<ForcedZero>,
}

fn matches_zero_pattern(ch: &ChernCharacter, zeros: &[(usize, usize)]) -> bool {
    zeros.iter().all(|&(i, j)| ch.entry(i, j).is_zero())
}

/// Closure arithmetic for the two Serre-closed patterns.
///
/// If the ambient class has a fully zero first row, every decomposition into
/// classes satisfying the torsion positivity has each part's c1·H·D and
/// ch2·H pairings equal to zero: nonnegative numbers summing to zero vanish
/// individually. For the pattern with only a00 = a01 = 0 the same argument
/// applies to c1·H·D alone. The returned certificate lists the vanishings
/// verified per part.
pub fn serre_closure_check(
    ch: &ChernCharacter,
    parts: &[ChernCharacter],
) -> Result<SerreClosure, Error> {
    if !ch.geometry().is_threefold() {
        return Err(Error::WrongGeometry {
            expected: "threefold",
            found: ch.geometry(),
        });
    }
    let mut sum = ChernCharacter::zero(ch.geometry());
    for part in parts {
        sum = sum.add(part)?;
    }
    if &sum != ch {
        return Err(Error::PartsSumMismatch);
    }

    let sec_pattern = matches_zero_pattern(ch, &[(0, 0), (0, 1), (0, 2)]);
    let corner_pattern = matches_zero_pattern(ch, &[(0, 0), (0, 1)]);
    if !sec_pattern && !corner_pattern {
        return Err(Error::SerrePatternMismatch);
    }

    // Necessary positivity on every part: torsion rank, case-1 signs, and
    // case-2 signs where the part matches case 2.
    for (index, part) in parts.iter().enumerate() {
        if !part.rank().is_zero() {
            return Err(Error::PartPositivity {
                index,
                constraint: "rank must vanish",
            });
        }
        if entry_pairing(part, (0, 1)).is_negative() {
            return Err(Error::PartPositivity {
                index,
                constraint: "c1·H·D must be nonnegative",
            });
        }
        if entry_pairing(part, (1, 0)).is_negative() {
            return Err(Error::PartPositivity {
                index,
                constraint: "c1·D² must be nonnegative",
            });
        }
        if matches_zero_pattern(part, PATTERN_CASES[1].zero_entries)
            && entry_pairing(part, (0, 2)).is_negative()
        {
            return Err(Error::PartPositivity {
                index,
                constraint: "ch2·H must be nonnegative",
            });
        }
    }

    let mut forced = Vec::new();
    let mut holds = true;
    for (index, part) in parts.iter().enumerate() {
        if entry_pairing(part, (0, 1)).is_zero() {
            forced.push(ForcedZero {
                part: index,
                pairing: "c1·H·D",
            });
        } else {
            holds = false;
        }
        if sec_pattern {
            if entry_pairing(part, (0, 2)).is_zero() {
                forced.push(ForcedZero {
                    part: index,
                    pairing: "ch2·H",
                });
            } else {
                holds = false;
            }
        }
    }
    Ok(SerreClosure { holds, forced })
}

/// Integer classes ch' with entries in [−bound, bound] such that ch' and
/// ch − ch' both pass every matched positivity case, plus the rank sanity
/// 0 ≤ a00' ≤ a00 (a00' = 0 when the ambient class is torsion).
///
/// Emitted in row-major lexicographic entry order; the stream may be empty.
pub fn admissible_subcharacters(
    ch: &ChernCharacter,
    bound: u32,
) -> Result<impl Iterator<Item = ChernCharacter> + '_, Error> {
    if !ch.geometry().is_threefold() {
        return Err(Error::WrongGeometry {
            expected: "threefold",
            found: ch.geometry(),
        });
    }
    let b = i64::from(bound);
    let (rows, cols) = ch.geometry().shape();
    let mut largest = BigInt::zero();
    for i in 0..rows {
        for j in 0..cols {
            largest = largest.max(ch.entry(i, j).abs());
        }
    }
    if largest > BigInt::from(b) {
        return Err(Error::BoundTooSmall {
            bound,
            needed: largest.to_string(),
        });
    }

    // Rank slot iterates only over its legal range; the other five entries
    // sweep the full box.
    let rank = ch.rank().clone();
    let rank_range: Vec<i64> = if rank.is_zero() {
        vec![0]
    } else if rank.is_negative() {
        Vec::new()
    } else {
        let top: i64 = rank.min(BigInt::from(b)).try_into().expect("bounded");
        (0..=top).collect()
    };

    let geometry = ch.geometry();
    let free_slots = rows * cols - 1;
    let iter = rank_range.into_iter().flat_map(move |r| {
        BoxOdometer::new(free_slots, b).filter_map(move |rest| {
            let mut entries = Vec::with_capacity(free_slots + 1);
            entries.push(r);
            entries.extend_from_slice(&rest);
            let cand = from_flat(geometry, &entries);
            is_admissible_subcharacter(&cand, ch).then_some(cand)
        })
    });
    Ok(iter)
}

fn from_flat(geometry: Geometry, entries: &[i64]) -> ChernCharacter {
    let (rows, cols) = geometry.shape();
    let mut ch = ChernCharacter::zero(geometry);
    for i in 0..rows {
        for j in 0..cols {
            ch.set_entry(i, j, BigInt::from(entries[i * cols + j]));
        }
    }
    ch
}

/// The admissibility predicate behind `admissible_subcharacters`.
pub fn is_admissible_subcharacter(cand: &ChernCharacter, ch: &ChernCharacter) -> bool {
    let rank = ch.rank();
    let cand_rank = cand.rank();
    let rank_ok = if rank.is_zero() {
        cand_rank.is_zero()
    } else if rank.is_negative() {
        false
    } else {
        !cand_rank.is_negative() && cand_rank <= rank
    };
    if !rank_ok {
        return false;
    }
    let Ok(rest) = ch.sub(cand) else {
        return false;
    };
    passes_all_matched_cases(cand).unwrap_or(false)
        && passes_all_matched_cases(&rest).unwrap_or(false)
}

/// Odometer over [−bound, bound]^slots in lexicographic order.
struct BoxOdometer {
    bound: i64,
    state: Vec<i64>,
    done: bool,
}

impl BoxOdometer {
    fn new(slots: usize, bound: i64) -> Self {
        BoxOdometer {
            bound,
            state: vec![-bound; slots],
            done: false,
        }
    }
}

impl Iterator for BoxOdometer {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        if self.done {
            return None;
        }
        let current = self.state.clone();
        // advance from the last slot
        let mut k = self.state.len();
        loop {
            if k == 0 {
                self.done = true;
                break;
            }
            k -= 1;
            if self.state[k] < self.bound {
                self.state[k] += 1;
                for s in &mut self.state[k + 1..] {
                    *s = -self.bound;
                }
                break;
            }
        }
        Some(current)
    }
}
