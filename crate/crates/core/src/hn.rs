//! Harder-Narasimhan filtrations for finite subobject lattices carrying a
//! slope-like label.
//!
//! A fixture is a finite lattice with bottom and top, each element labelled
//! by a pair (C0, C1) with C0 integral. Validity means exactly the numerical
//! shadow of a noetherian abelian category with a slope-like function:
//!
//! - the bottom label is (0, 0);
//! - labels are modular: label(a∨b) + label(a∧b) = label(a) + label(b),
//!   mirroring the exact sequence 0 → F∩G → F⊕G → F+G → 0;
//! - on every interval a ≤ b, C0(b) − C0(a) ≥ 0, and C1(b) − C1(a) ≥ 0
//!   whenever the C0 difference vanishes.
//!
//! On a valid fixture the engine produces the filtration
//! E01 ⊆ E0 ⊆ E1 ⊆ … ⊆ Em = top: the maximal (C0 = C1 = 0)-part, the
//! maximal C0 = 0 part, then greedy maximal destabilizers with strictly
//! decreasing slopes. `hn_by_exhaustion` independently enumerates every
//! chain and keeps those satisfying the filtration conditions; on a valid
//! fixture exactly one survives and it matches the greedy result.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::Rat;
use crate::slope::SlopeValue;

/// Additive label: C0 integral, C1 rational.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KClass {
    pub c0: i64,
    pub c1: Rat,
}

impl KClass {
    pub fn new(c0: i64, c1: Rat) -> Self {
        KClass { c0, c1 }
    }

    pub fn zero() -> Self {
        KClass {
            c0: 0,
            c1: Rat::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c0 == 0 && self.c1.is_zero()
    }

    fn add(&self, other: &KClass) -> KClass {
        KClass {
            c0: self.c0 + other.c0,
            c1: &self.c1 + &other.c1,
        }
    }

    fn sub(&self, other: &KClass) -> KClass {
        KClass {
            c0: self.c0 - other.c0,
            c1: &self.c1 - &other.c1,
        }
    }
}

/// μ = C1/C0, or +∞ when C0 = 0.
pub fn slope(k: &KClass) -> SlopeValue {
    SlopeValue::ratio(k.c1.clone(), Rat::from_int(k.c0))
}

/// Ordering of reduced polynomials for m ≫ 0.
///
/// For classes with C0 ≠ 0 the reduced polynomial is m + μ, so the order is
/// the slope order. A C0 = 0 class has a degree-drop: its reduced polynomial
/// is the constant 1, and it sits above every C0 ≠ 0 class.
pub fn p_compare(a: &KClass, b: &KClass) -> Ordering {
    slope(a).cmp(&slope(b))
}

/// Fixture element as written in JSON.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FixtureElement {
    #[serde(deserialize_with = "flexible_id")]
    pub id: String,
    #[serde(rename = "C0")]
    pub c0: i64,
    #[serde(rename = "C1")]
    pub c1: Rat,
}

/// On-disk lattice fixture: labelled elements plus generating ≤ pairs.
/// The reflexive-transitive closure, meets, and joins are derived.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticeFixture {
    pub elements: Vec<FixtureElement>,
    #[serde(default)]
    pub leq: Vec<(FlexId, FlexId)>,
}

/// Element id that accepts either a JSON string or an integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct FlexId(pub String);

impl<'de> Deserialize<'de> for FlexId {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        deserialize_flexible_id(deserializer).map(FlexId)
    }
}

fn flexible_id<'de, D: serde::Deserializer<'de>>(deserializer: D) -> Result<String, D::Error> {
    deserialize_flexible_id(deserializer)
}

fn deserialize_flexible_id<'de, D: serde::Deserializer<'de>>(
    deserializer: D,
) -> Result<String, D::Error> {
    struct V;
    impl serde::de::Visitor<'_> for V {
        type Value = String;
        fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            f.write_str("a string or integer id")
        }
        fn visit_str<E>(self, v: &str) -> Result<String, E> {
            Ok(v.to_owned())
        }
        fn visit_i64<E>(self, v: i64) -> Result<String, E> {
            Ok(v.to_string())
        }
        fn visit_u64<E>(self, v: u64) -> Result<String, E> {
            Ok(v.to_string())
        }
    }
    deserializer.deserialize_any(V)
}

/// Why a fixture is not a valid labelled subobject lattice.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("duplicate element id {0:?}")]
    DuplicateId(String),
    #[error("leq references unknown id {0:?}")]
    UnknownId(String),
    #[error("not a partial order: {a:?} ≤ {b:?} ≤ {a:?} with distinct elements")]
    NotAntisymmetric { a: String, b: String },
    #[error("no bottom element")]
    NoBottom,
    #[error("no top element")]
    NoTop,
    #[error("elements {a:?}, {b:?} have no {kind}")]
    NotALattice {
        a: String,
        b: String,
        kind: &'static str,
    },
    #[error("bottom element {0:?} must be labelled (0, 0)")]
    BottomLabelNonzero(String),
    #[error("labels not additive on the pair {a:?}, {b:?}: join+meet ≠ a+b")]
    AdditivityViolation { a: String, b: String },
    #[error("C0 not monotone on the interval {a:?} ≤ {b:?}")]
    C0NotMonotone { a: String, b: String },
    #[error("C1 decreases on the C0-flat interval {a:?} ≤ {b:?}")]
    C1NotMonotone { a: String, b: String },
}

/// Engine-level failures on a structurally valid lattice. Every variant
/// indicates the fixture violates the abelian-category axioms it models.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HnError {
    #[error("join {join:?} of the C0 = 0 elements has C0 ≠ 0")]
    TorsionJoinEscapes { join: String },
    #[error("join {join:?} of the (C0, C1) = (0, 0) elements is not labelled (0, 0)")]
    B01JoinEscapes { join: String },
    #[error("no elements strictly above {floor:?}")]
    NothingAboveFloor { floor: String },
    #[error("join {join:?} of the slope-maximal elements above {floor:?} does not attain the maximum")]
    DestabilizerJoinNotMaximal { floor: String, join: String },
    #[error("subfactor above {floor:?} has C0 = 0; torsion appears above the torsion part")]
    TorsionAboveTorsionPart { floor: String },
    #[error("greedy subfactor slopes fail to decrease strictly at {at:?}")]
    SlopesNotDecreasing { at: String },
    #[error("exhaustion found {found} valid chains instead of exactly one")]
    ExhaustionNotUnique { found: usize },
    #[error("no layer with C0 > 0: extremal slopes undefined")]
    NoPositiveRankLayer,
}

/// Index of an element inside a `SubobjectLattice`.
pub type ElementId = usize;

/// A validated finite subobject lattice.
pub struct SubobjectLattice {
    ids: Vec<String>,
    labels: Vec<KClass>,
    leq: Vec<Vec<bool>>,
    meet: Vec<Vec<ElementId>>,
    join: Vec<Vec<ElementId>>,
    bottom: ElementId,
    top: ElementId,
}

/// Build and fully validate a lattice from a fixture. This is the single
/// entry point; every violation is reported with witnesses.
pub fn validate_lattice(fixture: &LatticeFixture) -> Result<SubobjectLattice, LatticeError> {
    SubobjectLattice::from_fixture(fixture)
}

impl SubobjectLattice {
    pub fn from_fixture(fixture: &LatticeFixture) -> Result<Self, LatticeError> {
        let n = fixture.elements.len();
        let mut ids = Vec::with_capacity(n);
        let mut labels = Vec::with_capacity(n);
        for el in &fixture.elements {
            if ids.contains(&el.id) {
                return Err(LatticeError::DuplicateId(el.id.clone()));
            }
            ids.push(el.id.clone());
            labels.push(KClass::new(el.c0, el.c1.clone()));
        }
        let index_of = |id: &str| -> Result<usize, LatticeError> {
            ids.iter()
                .position(|x| x == id)
                .ok_or_else(|| LatticeError::UnknownId(id.to_owned()))
        };

        // reflexive closure plus the given pairs, then transitive closure
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in &fixture.leq {
            let ia = index_of(&a.0)?;
            let ib = index_of(&b.0)?;
            leq[ia][ib] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if !leq[i][k] {
                    continue;
                }
                let through: Vec<usize> = (0..n).filter(|&j| leq[k][j]).collect();
                for j in through {
                    leq[i][j] = true;
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if leq[i][j] && leq[j][i] {
                    return Err(LatticeError::NotAntisymmetric {
                        a: ids[i].clone(),
                        b: ids[j].clone(),
                    });
                }
            }
        }

        let bottom = (0..n)
            .find(|&x| (0..n).all(|y| leq[x][y]))
            .ok_or(LatticeError::NoBottom)?;
        let top = (0..n)
            .find(|&x| (0..n).all(|y| leq[y][x]))
            .ok_or(LatticeError::NoTop)?;

        let mut meet = vec![vec![0usize; n]; n];
        let mut join = vec![vec![0usize; n]; n];
        for a in 0..n {
            for b in 0..n {
                let lower: Vec<usize> = (0..n).filter(|&x| leq[x][a] && leq[x][b]).collect();
                let glb = lower
                    .iter()
                    .copied()
                    .find(|&m| lower.iter().all(|&x| leq[x][m]))
                    .ok_or_else(|| LatticeError::NotALattice {
                        a: ids[a].clone(),
                        b: ids[b].clone(),
                        kind: "meet",
                    })?;
                meet[a][b] = glb;
                let upper: Vec<usize> = (0..n).filter(|&x| leq[a][x] && leq[b][x]).collect();
                let lub = upper
                    .iter()
                    .copied()
                    .find(|&m| upper.iter().all(|&x| leq[m][x]))
                    .ok_or_else(|| LatticeError::NotALattice {
                        a: ids[a].clone(),
                        b: ids[b].clone(),
                        kind: "join",
                    })?;
                join[a][b] = lub;
            }
        }

        let lattice = SubobjectLattice {
            ids,
            labels,
            leq,
            meet,
            join,
            bottom,
            top,
        };
        lattice.validate_labels()?;
        Ok(lattice)
    }

    fn validate_labels(&self) -> Result<(), LatticeError> {
        let n = self.ids.len();
        if !self.labels[self.bottom].is_zero() {
            return Err(LatticeError::BottomLabelNonzero(
                self.ids[self.bottom].clone(),
            ));
        }
        for a in 0..n {
            for b in 0..n {
                let lhs = self.labels[self.join[a][b]].add(&self.labels[self.meet[a][b]]);
                let rhs = self.labels[a].add(&self.labels[b]);
                if lhs != rhs {
                    return Err(LatticeError::AdditivityViolation {
                        a: self.ids[a].clone(),
                        b: self.ids[b].clone(),
                    });
                }
                if self.leq[a][b] {
                    let diff = self.labels[b].sub(&self.labels[a]);
                    if diff.c0 < 0 {
                        return Err(LatticeError::C0NotMonotone {
                            a: self.ids[a].clone(),
                            b: self.ids[b].clone(),
                        });
                    }
                    if diff.c0 == 0 && diff.c1.is_negative() {
                        return Err(LatticeError::C1NotMonotone {
                            a: self.ids[a].clone(),
                            b: self.ids[b].clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn id(&self, e: ElementId) -> &str {
        &self.ids[e]
    }

    pub fn label(&self, e: ElementId) -> &KClass {
        &self.labels[e]
    }

    pub fn bottom(&self) -> ElementId {
        self.bottom
    }

    pub fn top(&self) -> ElementId {
        self.top
    }

    pub fn le(&self, a: ElementId, b: ElementId) -> bool {
        self.leq[a][b]
    }

    pub fn join_of(&self, a: ElementId, b: ElementId) -> ElementId {
        self.join[a][b]
    }

    pub fn meet_of(&self, a: ElementId, b: ElementId) -> ElementId {
        self.meet[a][b]
    }

    /// Label of x relative to a floor: label(x) − label(floor).
    pub fn rel_label(&self, x: ElementId, floor: ElementId) -> KClass {
        self.labels[x].sub(&self.labels[floor])
    }

    /// The unique maximal element with C0 = 0.
    ///
    /// Computed as the join of all such elements, then verified to still
    /// have C0 = 0 (it must, by additivity and positivity; failure means
    /// the fixture does not model a Serre torsion class).
    pub fn torsion_part(&self) -> Result<ElementId, HnError> {
        let candidates = (0..self.len()).filter(|&x| self.labels[x].c0 == 0);
        let join = candidates.fold(self.bottom, |acc, x| self.join[acc][x]);
        if self.labels[join].c0 != 0 {
            return Err(HnError::TorsionJoinEscapes {
                join: self.ids[join].clone(),
            });
        }
        Ok(join)
    }

    /// The unique maximal element with (C0, C1) = (0, 0).
    pub fn b01_part(&self) -> Result<ElementId, HnError> {
        let candidates = (0..self.len()).filter(|&x| self.labels[x].is_zero());
        let join = candidates.fold(self.bottom, |acc, x| self.join[acc][x]);
        if !self.labels[join].is_zero() {
            return Err(HnError::B01JoinEscapes {
                join: self.ids[join].clone(),
            });
        }
        Ok(join)
    }

    /// Among elements strictly above `floor`, the unique maximizer of the
    /// reduced-polynomial order on subfactor classes label(x) − label(floor).
    ///
    /// All maximizers are joined and the join is verified to still attain
    /// the maximum; in a genuine subobject lattice the join always does.
    pub fn maximal_destabilizer(&self, floor: ElementId) -> Result<ElementId, HnError> {
        let candidates: Vec<ElementId> = (0..self.len())
            .filter(|&x| x != floor && self.leq[floor][x])
            .collect();
        if candidates.is_empty() {
            return Err(HnError::NothingAboveFloor {
                floor: self.ids[floor].clone(),
            });
        }
        let best = candidates
            .iter()
            .map(|&x| self.rel_label(x, floor))
            .max_by(p_compare)
            .expect("nonempty candidates");
        let maximizers: Vec<ElementId> = candidates
            .into_iter()
            .filter(|&x| p_compare(&self.rel_label(x, floor), &best) == Ordering::Equal)
            .collect();
        let join = maximizers
            .iter()
            .fold(maximizers[0], |acc, &x| self.join[acc][x]);
        if p_compare(&self.rel_label(join, floor), &best) != Ordering::Equal {
            return Err(HnError::DestabilizerJoinNotMaximal {
                floor: self.ids[floor].clone(),
                join: self.ids[join].clone(),
            });
        }
        Ok(join)
    }

    /// The Harder-Narasimhan filtration by the greedy maximal-destabilizer
    /// construction, fully re-verified before returning.
    pub fn hn_filtration(&self) -> Result<HNFiltration, HnError> {
        let b01 = self.b01_part()?;
        let torsion = self.torsion_part()?;
        let mut layers = Vec::new();
        let mut cur = torsion;
        while cur != self.top {
            let next = self.maximal_destabilizer(cur)?;
            layers.push(next);
            cur = next;
        }

        let mut layer_classes = Vec::with_capacity(layers.len());
        let mut layer_slopes = Vec::with_capacity(layers.len());
        let mut floor = torsion;
        for &e in &layers {
            let class = self.rel_label(e, floor);
            if class.c0 == 0 {
                return Err(HnError::TorsionAboveTorsionPart {
                    floor: self.ids[floor].clone(),
                });
            }
            layer_slopes.push(slope(&class));
            layer_classes.push(class);
            floor = e;
        }
        for (i, w) in layer_slopes.windows(2).enumerate() {
            if w[0] <= w[1] {
                return Err(HnError::SlopesNotDecreasing {
                    at: self.ids[layers[i + 1]].clone(),
                });
            }
        }
        // each subfactor is semistable inside its interval
        let mut floor = torsion;
        for (idx, &e) in layers.iter().enumerate() {
            for x in 0..self.len() {
                if x != floor && self.leq[floor][x] && self.leq[x][e] {
                    let rel = self.rel_label(x, floor);
                    if p_compare(&rel, &layer_classes[idx]) == Ordering::Greater {
                        return Err(HnError::DestabilizerJoinNotMaximal {
                            floor: self.ids[floor].clone(),
                            join: self.ids[x].clone(),
                        });
                    }
                }
            }
            floor = e;
        }

        Ok(HNFiltration {
            b01,
            torsion,
            b01_class: self.labels[b01].clone(),
            torsion_class: self.labels[torsion].sub(&self.labels[b01]),
            layers,
            layer_classes,
            layer_slopes,
        })
    }

    /// Independent oracle: enumerate every chain bottom-up and keep those
    /// satisfying the filtration conditions verbatim. Exactly one must
    /// survive on a valid fixture. Exponential; fixtures are desk-scale.
    pub fn hn_by_exhaustion(&self) -> Result<HNFiltration, HnError> {
        let mut valid = Vec::new();
        for b01 in 0..self.len() {
            if !self.labels[b01].is_zero() {
                continue;
            }
            for e0 in 0..self.len() {
                if !self.leq[b01][e0] || self.labels[e0].c0 != 0 {
                    continue;
                }
                // E0/E01 must contain no nonzero (0,0)-subobject: every x in
                // (b01, e0] has C1(x) > C1(b01)
                let pure = (0..self.len()).all(|x| {
                    x == b01
                        || !self.leq[b01][x]
                        || !self.leq[x][e0]
                        || self.rel_label(x, b01).c1.is_positive()
                });
                if !pure {
                    continue;
                }
                if e0 == self.top {
                    valid.push((b01, e0, Vec::new()));
                } else {
                    self.extend_chains(b01, e0, e0, None, &mut Vec::new(), &mut valid);
                }
            }
        }
        if valid.len() != 1 {
            return Err(HnError::ExhaustionNotUnique { found: valid.len() });
        }
        let (b01, e0, layers) = valid.pop().expect("exactly one");
        let mut layer_classes = Vec::new();
        let mut layer_slopes = Vec::new();
        let mut floor = e0;
        for &e in &layers {
            let class = self.rel_label(e, floor);
            layer_slopes.push(slope(&class));
            layer_classes.push(class);
            floor = e;
        }
        Ok(HNFiltration {
            b01,
            torsion: e0,
            b01_class: self.labels[b01].clone(),
            torsion_class: self.labels[e0].sub(&self.labels[b01]),
            layers,
            layer_classes,
            layer_slopes,
        })
    }

    /// Depth-first extension of a candidate chain: try every element
    /// strictly above `floor` as the next term, check the layer conditions,
    /// and record the chain when the top is reached.
    fn extend_chains(
        &self,
        b01: ElementId,
        e0: ElementId,
        floor: ElementId,
        prev_slope: Option<SlopeValue>,
        layers: &mut Vec<ElementId>,
        valid: &mut Vec<(ElementId, ElementId, Vec<ElementId>)>,
    ) {
        for next in 0..self.len() {
            if next == floor || !self.leq[floor][next] {
                continue;
            }
            let class = self.rel_label(next, floor);
            // the subfactor must have C0 > 0 and no C0 = 0 subobjects
            if class.c0 == 0 {
                continue;
            }
            let interval_ok = (0..self.len()).all(|x| {
                if x == floor || !self.leq[floor][x] || !self.leq[x][next] {
                    return true;
                }
                let rel = self.rel_label(x, floor);
                rel.c0 > 0 && p_compare(&rel, &class) != Ordering::Greater
            });
            if !interval_ok {
                continue;
            }
            let mu = slope(&class);
            if let Some(prev) = &prev_slope {
                if *prev <= mu {
                    continue;
                }
            }
            layers.push(next);
            if next == self.top {
                valid.push((b01, e0, layers.clone()));
            } else {
                self.extend_chains(b01, e0, next, Some(mu), layers, valid);
            }
            layers.pop();
        }
    }
}

/// The filtration: torsion layers plus strictly-decreasing semistable layers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HNFiltration {
    pub b01: ElementId,
    pub torsion: ElementId,
    pub b01_class: KClass,
    pub torsion_class: KClass,
    /// Elements E1 < … < Em = top; empty when the torsion part is the top.
    pub layers: Vec<ElementId>,
    pub layer_classes: Vec<KClass>,
    pub layer_slopes: Vec<SlopeValue>,
}

impl HNFiltration {
    /// Full chain [E01, E0, E1, …, Em].
    pub fn chain(&self) -> Vec<ElementId> {
        let mut out = vec![self.b01, self.torsion];
        out.extend_from_slice(&self.layers);
        out
    }

    /// Slope of the first C0 > 0 layer.
    pub fn mu_max(&self) -> Option<&SlopeValue> {
        self.layer_slopes.first()
    }

    /// Slope of the last C0 > 0 layer.
    pub fn mu_min(&self) -> Option<&SlopeValue> {
        self.layer_slopes.last()
    }
}

/// μ_max as a fallible engine operation; absent layers are an error the
/// caller reports rather than a silent default.
pub fn mu_max(lattice: &SubobjectLattice) -> Result<SlopeValue, HnError> {
    lattice
        .hn_filtration()?
        .mu_max()
        .cloned()
        .ok_or(HnError::NoPositiveRankLayer)
}

pub fn mu_min(lattice: &SubobjectLattice) -> Result<SlopeValue, HnError> {
    lattice
        .hn_filtration()?
        .mu_min()
        .cloned()
        .ok_or(HnError::NoPositiveRankLayer)
}

/// Rendered filtration with string ids, for CLI and JSON output.
#[derive(Clone, Debug, Serialize)]
pub struct FiltrationReport {
    pub chain: Vec<String>,
    pub subfactor_classes: Vec<KClass>,
    pub slopes: Vec<SlopeValue>,
}

pub fn render_filtration(lattice: &SubobjectLattice, f: &HNFiltration) -> FiltrationReport {
    FiltrationReport {
        chain: f.chain().iter().map(|&e| lattice.id(e).to_owned()).collect(),
        subfactor_classes: f.layer_classes.clone(),
        slopes: f.layer_slopes.clone(),
    }
}

/// Multiply every C1 label by a (positive) factor. The HN chain of elements
/// is invariant under this: the greedy step is an argmax, not a value.
pub fn scale_c1(fixture: &LatticeFixture, factor: &Rat) -> LatticeFixture {
    LatticeFixture {
        elements: fixture
            .elements
            .iter()
            .map(|el| FixtureElement {
                id: el.id.clone(),
                c0: el.c0,
                c1: &el.c1 * factor,
            })
            .collect(),
        leq: fixture.leq.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture(els: &[(&str, i64, i64)], leq: &[(&str, &str)]) -> LatticeFixture {
        LatticeFixture {
            elements: els
                .iter()
                .map(|&(id, c0, c1)| FixtureElement {
                    id: id.to_owned(),
                    c0,
                    c1: Rat::from_int(c1),
                })
                .collect(),
            leq: leq
                .iter()
                .map(|&(a, b)| (FlexId(a.to_owned()), FlexId(b.to_owned())))
                .collect(),
        }
    }

    fn chain_fixture() -> LatticeFixture {
        fixture(
            &[("0", 0, 0), ("A", 1, 5), ("E", 2, 8)],
            &[("0", "A"), ("A", "E")],
        )
    }

    #[test]
    fn validates_a_simple_chain() {
        let l = validate_lattice(&fixture(
            &[("0", 0, 0), ("A", 1, 1), ("E", 2, 1)],
            &[("0", "A"), ("A", "E")],
        ))
        .unwrap();
        assert_eq!(l.id(l.bottom()), "0");
        assert_eq!(l.id(l.top()), "E");
    }

    #[test]
    fn rejects_additivity_violation_on_a_diamond() {
        // join label deliberately off by one
        let f = fixture(
            &[("0", 0, 0), ("A", 1, 1), ("B", 1, 1), ("J", 2, 3)],
            &[("0", "A"), ("0", "B"), ("A", "J"), ("B", "J")],
        );
        assert!(matches!(
            validate_lattice(&f),
            Err(LatticeError::AdditivityViolation { .. })
        ));
    }

    #[test]
    fn rejects_c0_drop_on_an_interval() {
        let f = fixture(
            &[("0", 0, 0), ("A", 2, 1), ("E", 1, 1)],
            &[("0", "A"), ("A", "E")],
        );
        assert!(matches!(
            validate_lattice(&f),
            Err(LatticeError::C0NotMonotone { .. })
        ));
    }

    #[test]
    fn rejects_negative_c1_on_flat_interval_and_bad_bottom() {
        let f = fixture(
            &[("0", 0, 0), ("A", 1, 3), ("E", 1, 2)],
            &[("0", "A"), ("A", "E")],
        );
        assert!(matches!(
            validate_lattice(&f),
            Err(LatticeError::C1NotMonotone { .. })
        ));
        let f = fixture(&[("0", 0, 1)], &[]);
        assert!(matches!(
            validate_lattice(&f),
            Err(LatticeError::BottomLabelNonzero(_))
        ));
    }

    #[test]
    fn rejects_non_lattices() {
        // two maximal elements: no top, and {A,B} has no join
        let f = fixture(
            &[("0", 0, 0), ("A", 1, 0), ("B", 1, 0)],
            &[("0", "A"), ("0", "B")],
        );
        assert!(validate_lattice(&f).is_err());
    }

    #[test]
    fn slope_and_p_compare() {
        assert_eq!(
            slope(&KClass::new(2, Rat::from_int(6))),
            SlopeValue::finite(Rat::from_int(3))
        );
        assert_eq!(
            slope(&KClass::new(1, Rat::from_int(5))),
            SlopeValue::finite(Rat::from_int(5))
        );
        assert_eq!(
            p_compare(
                &KClass::new(1, Rat::from_int(5)),
                &KClass::new(2, Rat::from_int(6))
            ),
            Ordering::Greater
        );
        // C0 = 0 classes are p-maximal
        assert_eq!(
            p_compare(
                &KClass::new(0, Rat::from_int(-7)),
                &KClass::new(1, Rat::from_int(1_000_000))
            ),
            Ordering::Greater
        );
        assert_eq!(
            p_compare(
                &KClass::new(2, Rat::from_int(6)),
                &KClass::new(4, Rat::from_int(12))
            ),
            Ordering::Equal
        );
    }

    #[test]
    fn torsion_and_b01_parts() {
        // no C0 = 0 element except bottom
        let l = validate_lattice(&chain_fixture()).unwrap();
        assert_eq!(l.torsion_part().unwrap(), l.bottom());
        assert_eq!(l.b01_part().unwrap(), l.bottom());

        // chain 0 < T < E with label(T) = (0,1)
        let f = fixture(
            &[("0", 0, 0), ("T", 0, 1), ("E", 1, 1)],
            &[("0", "T"), ("T", "E")],
        );
        let l = validate_lattice(&f).unwrap();
        let t = l.torsion_part().unwrap();
        assert_eq!(l.id(t), "T");
        // B01 ⊆ B0
        assert!(l.le(l.b01_part().unwrap(), t));
    }

    #[test]
    fn maximal_destabilizer_on_chains_and_diamonds() {
        let l = validate_lattice(&fixture(
            &[("0", 0, 0), ("A", 1, 5), ("E", 2, 6)],
            &[("0", "A"), ("A", "E")],
        ))
        .unwrap();
        let f = l.maximal_destabilizer(l.bottom()).unwrap();
        assert_eq!(l.id(f), "A");

        // semistable: every proper subobject has slope ≤ the top's
        let l = validate_lattice(&fixture(
            &[("0", 0, 0), ("A", 1, 1), ("E", 2, 6)],
            &[("0", "A"), ("A", "E")],
        ))
        .unwrap();
        assert_eq!(l.maximal_destabilizer(l.bottom()).unwrap(), l.top());

        // two incomparable slope-5 subobjects: the join attains slope 5
        let l = validate_lattice(&fixture(
            &[
                ("0", 0, 0),
                ("A", 1, 5),
                ("B", 1, 5),
                ("J", 2, 10),
                ("E", 3, 11),
            ],
            &[("0", "A"), ("0", "B"), ("A", "J"), ("B", "J"), ("J", "E")],
        ))
        .unwrap();
        let f = l.maximal_destabilizer(l.bottom()).unwrap();
        assert_eq!(l.id(f), "J");
    }

    #[test]
    fn hn_filtration_of_the_slope_five_three_chain() {
        let l = validate_lattice(&chain_fixture()).unwrap();
        let f = l.hn_filtration().unwrap();
        assert_eq!(f.chain(), vec![l.bottom(), l.bottom(), 1, l.top()]);
        assert_eq!(
            f.layer_slopes,
            vec![
                SlopeValue::finite(Rat::from_int(5)),
                SlopeValue::finite(Rat::from_int(3))
            ]
        );
        assert_eq!(f, l.hn_by_exhaustion().unwrap());
    }

    #[test]
    fn semistable_top_gives_one_layer() {
        let l = validate_lattice(&fixture(
            &[("0", 0, 0), ("A", 1, 1), ("E", 2, 6)],
            &[("0", "A"), ("A", "E")],
        ))
        .unwrap();
        let f = l.hn_filtration().unwrap();
        assert_eq!(f.chain(), vec![l.bottom(), l.bottom(), l.top()]);
        assert_eq!(f, l.hn_by_exhaustion().unwrap());
        assert_eq!(mu_max(&l).unwrap(), mu_min(&l).unwrap());
    }

    #[test]
    fn four_layer_chain_with_real_torsion_layers() {
        let f = fixture(
            &[("0", 0, 0), ("P", 0, 0), ("T", 0, 2), ("X", 1, 4), ("E", 2, 5)],
            &[("0", "P"), ("P", "T"), ("T", "X"), ("X", "E")],
        );
        let l = validate_lattice(&f).unwrap();
        let hn = l.hn_filtration().unwrap();
        assert_eq!(l.id(hn.b01), "P");
        assert_eq!(l.id(hn.torsion), "T");
        assert_eq!(
            hn.layer_slopes,
            vec![
                SlopeValue::finite(Rat::from_int(2)),
                SlopeValue::finite(Rat::from_int(1))
            ]
        );
        assert_eq!(hn, l.hn_by_exhaustion().unwrap());
        // torsion layers have the expected classes
        assert_eq!(hn.b01_class, KClass::zero());
        assert_eq!(hn.torsion_class, KClass::new(0, Rat::from_int(2)));
    }

    #[test]
    fn singleton_lattice() {
        let l = validate_lattice(&fixture(&[("0", 0, 0)], &[])).unwrap();
        let f = l.hn_filtration().unwrap();
        assert_eq!(f.chain(), vec![0, 0]);
        assert!(f.layers.is_empty());
        assert_eq!(f, l.hn_by_exhaustion().unwrap());
        assert!(matches!(mu_max(&l), Err(HnError::NoPositiveRankLayer)));
    }

    #[test]
    fn all_torsion_lattice_reports_undefined_extremes() {
        let f = fixture(
            &[("0", 0, 0), ("T", 0, 1), ("E", 0, 3)],
            &[("0", "T"), ("T", "E")],
        );
        let l = validate_lattice(&f).unwrap();
        let hn = l.hn_filtration().unwrap();
        assert!(hn.layers.is_empty());
        assert_eq!(l.id(hn.torsion), "E");
        assert!(matches!(mu_max(&l), Err(HnError::NoPositiveRankLayer)));
        assert_eq!(hn, l.hn_by_exhaustion().unwrap());
    }

    #[test]
    fn degenerate_equal_labels_give_one_term() {
        // C0 = C1 on every element: every object in (B0)° is semistable
        let f = fixture(
            &[("0", 0, 0), ("A", 1, 1), ("B", 2, 2), ("E", 3, 3)],
            &[("0", "A"), ("A", "B"), ("B", "E")],
        );
        let l = validate_lattice(&f).unwrap();
        let hn = l.hn_filtration().unwrap();
        assert_eq!(hn.chain(), vec![l.bottom(), l.bottom(), l.top()]);
        assert_eq!(hn.layer_slopes, vec![SlopeValue::finite(Rat::one())]);
        assert_eq!(hn, l.hn_by_exhaustion().unwrap());
    }

    #[test]
    fn scaling_c1_preserves_the_chain() {
        let base = fixture(
            &[
                ("0", 0, 0),
                ("A", 1, 5),
                ("B", 1, 5),
                ("J", 2, 10),
                ("E", 3, 11),
            ],
            &[("0", "A"), ("0", "B"), ("A", "J"), ("B", "J"), ("J", "E")],
        );
        let l = validate_lattice(&base).unwrap();
        let reference = l.hn_filtration().unwrap();
        for factor in [Rat::new(1, 3), Rat::from_int(2), Rat::from_int(7)] {
            let scaled = validate_lattice(&scale_c1(&base, &factor)).unwrap();
            let hn = scaled.hn_filtration().unwrap();
            assert_eq!(hn.chain(), reference.chain());
        }
    }

    #[test]
    fn fixture_json_round_trip() {
        let js = r#"{
            "elements": [
                {"id": "0", "C0": 0, "C1": 0},
                {"id": 1, "C0": 1, "C1": "5/2"},
                {"id": "E", "C0": 2, "C1": 4}
            ],
            "leq": [["0", 1], [1, "E"]]
        }"#;
        let f: LatticeFixture = serde_json::from_str(js).unwrap();
        assert_eq!(f.elements[1].id, "1");
        assert_eq!(f.elements[1].c1, Rat::new(5, 2));
        let l = validate_lattice(&f).unwrap();
        assert_eq!(l.len(), 3);
        let hn = l.hn_filtration().unwrap();
        assert_eq!(
            hn.layer_slopes,
            vec![
                SlopeValue::finite(Rat::new(5, 2)),
                SlopeValue::finite(Rat::new(3, 2))
            ]
        );
    }
}
