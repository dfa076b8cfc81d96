//! The algebraic cohomology ring of the product, with exact arithmetic.
//!
//! Classes are coefficient matrices over the Künneth basis e_i ⊗ f_j, where
//! e_0, e_1 generate the algebraic cohomology of the elliptic curve and
//! f_0, .., f_top that of the base factor (K3 surface or curve). The entry
//! a_ij sits in cohomological degree 2(i + j); entries on the same
//! antidiagonal of the matrix share a degree.
//!
//! Everything downstream (slopes, Hilbert polynomials, the verifiers) is
//! required to go through `cup` and `integrate` rather than hand-simplified
//! coordinate formulas, so this module is the single source of intersection
//! numbers.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::geometry::Geometry;
use crate::poly::{FormalParam, RationalPoly};
use crate::rational::Rat;

/// A rational cohomology class in the Künneth basis.
#[derive(Clone, PartialEq, Eq)]
pub struct CohClass {
    geometry: Geometry,
    entries: Vec<Rat>, // row-major: index = i * cols + j
}

impl CohClass {
    pub fn zero(geometry: Geometry) -> Self {
        let (rows, cols) = geometry.shape();
        CohClass {
            geometry,
            entries: vec![Rat::zero(); rows * cols],
        }
    }

    /// The basis class e_i ⊗ f_j.
    pub fn basis(geometry: Geometry, i: usize, j: usize) -> Self {
        let mut c = Self::zero(geometry);
        c.set(i, j, Rat::one());
        c
    }

    /// The multiplicative unit e_0 ⊗ f_0.
    pub fn unit(geometry: Geometry) -> Self {
        Self::basis(geometry, 0, 0)
    }

    pub fn from_rows(geometry: Geometry, rows: Vec<Vec<Rat>>) -> Result<Self, Error> {
        let (er, ec) = geometry.shape();
        if rows.len() != er || rows.iter().any(|r| r.len() != ec) {
            return Err(Error::ShapeMismatch {
                rows: rows.len(),
                cols: rows.first().map_or(0, Vec::len),
                expected_rows: er,
                expected_cols: ec,
            });
        }
        Ok(CohClass {
            geometry,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn geometry(&self) -> Geometry {
        self.geometry
    }

    fn cols(&self) -> usize {
        self.geometry.shape().1
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i * self.cols() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rat) {
        let idx = i * self.cols() + j;
        self.entries[idx] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rat::is_zero)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        CohClass {
            geometry: self.geometry,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    /// The part of the class in the antidiagonal i + j = k.
    pub fn graded_component(&self, k: usize) -> Self {
        let (rows, cols) = self.geometry.shape();
        let mut out = Self::zero(self.geometry);
        for i in 0..rows {
            for j in 0..cols {
                if i + j == k {
                    out.set(i, j, self.get(i, j).clone());
                }
            }
        }
        out
    }

    fn check_geometry(&self, other: &Self) -> Result<(), Error> {
        if self.geometry != other.geometry {
            return Err(Error::GeometryMismatch {
                left: self.geometry,
                right: other.geometry,
            });
        }
        Ok(())
    }

    /// Cup product. Bilinear over the basis products of the two factors;
    /// anything landing above the top degree is zero.
    pub fn cup(&self, other: &Self) -> Result<Self, Error> {
        self.check_geometry(other)?;
        let (rows, cols) = self.geometry.shape();
        let mut out = Self::zero(self.geometry);
        for i1 in 0..rows {
            for j1 in 0..cols {
                let a = self.get(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..rows {
                    for j2 in 0..cols {
                        let b = other.get(i2, j2);
                        if b.is_zero() {
                            continue;
                        }
                        if let Some((i, j, factor)) =
                            basis_product(self.geometry, (i1, j1), (i2, j2))
                        {
                            let val = out.get(i, j) + a * b * factor;
                            out.set(i, j, val);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Coefficient of the top-degree basis class (the integral over the space).
    pub fn integrate(&self) -> Rat {
        let (i, j) = self.geometry.top_index();
        self.get(i, j).clone()
    }

    /// integrate(self ∪ other): the intersection pairing.
    pub fn pairing(&self, other: &Self) -> Result<Rat, Error> {
        Ok(self.cup(other)?.integrate())
    }
}

/// Product of two basis classes: the target index and the scalar factor.
///
/// Curve factor: e_0 is the unit, e_1 ∪ e_1 = 0. Base factor on the K3:
/// f_1 ∪ f_1 = 2d f_2, f_0 is the unit, everything above f_2 vanishes.
/// Base factor on a curve: f_1 ∪ f_1 = 0.
fn basis_product(
    geometry: Geometry,
    (i1, j1): (usize, usize),
    (i2, j2): (usize, usize),
) -> Option<(usize, usize, Rat)> {
    if i1 + i2 > 1 {
        return None;
    }
    let (_, cols) = geometry.shape();
    let j = j1 + j2;
    if j > cols - 1 {
        return None;
    }
    let factor = if j1 == 0 || j2 == 0 {
        Rat::one()
    } else {
        // j1 = j2 = 1: zero on a curve base, H_S^2 = 2d [pt] on the K3
        let d = geometry.k3_degree()?;
        Rat::from_int(2 * i64::from(d))
    };
    Some((i1 + i2, j, factor))
}

impl Add<&CohClass> for &CohClass {
    type Output = CohClass;
    fn add(self, rhs: &CohClass) -> CohClass {
        assert_eq!(self.geometry, rhs.geometry, "geometry mismatch in +");
        CohClass {
            geometry: self.geometry,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub<&CohClass> for &CohClass {
    type Output = CohClass;
    fn sub(self, rhs: &CohClass) -> CohClass {
        assert_eq!(self.geometry, rhs.geometry, "geometry mismatch in -");
        CohClass {
            geometry: self.geometry,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &CohClass {
    type Output = CohClass;
    fn neg(self) -> CohClass {
        CohClass {
            geometry: self.geometry,
            entries: self.entries.iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Debug for CohClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (rows, cols) = self.geometry.shape();
        write!(f, "[")?;
        for i in 0..rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

/// The Todd class of the ambient space.
///
/// Threefold: 1 + 2 e_0⊗f_2 (the curve factor contributes nothing, the K3
/// contributes χ(O) = 2 in its top degree). Surface over a genus-g curve:
/// 1 + (1−g) e_0⊗f_1.
pub fn todd_class(geometry: Geometry) -> CohClass {
    let mut td = CohClass::unit(geometry);
    match geometry {
        Geometry::Threefold { .. } => td.set(0, 2, Rat::from_int(2)),
        Geometry::Surface { g } => td.set(0, 1, Rat::from_int(1 - i64::from(g))),
    }
    td
}

/// An integral Chern character in the Künneth basis.
///
/// Entries are genuine integers: the basis is an integral basis of the
/// algebraic cohomology lattice, and Chern characters of complexes on these
/// products land in it.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ChernRepr", into = "ChernRepr")]
pub struct ChernCharacter {
    geometry: Geometry,
    entries: Vec<BigInt>, // row-major, same layout as CohClass
}

impl ChernCharacter {
    pub fn zero(geometry: Geometry) -> Self {
        let (rows, cols) = geometry.shape();
        ChernCharacter {
            geometry,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_rows(geometry: Geometry, rows: Vec<Vec<BigInt>>) -> Result<Self, Error> {
        let (er, ec) = geometry.shape();
        if rows.len() != er || rows.iter().any(|r| r.len() != ec) {
            return Err(Error::ShapeMismatch {
                rows: rows.len(),
                cols: rows.first().map_or(0, Vec::len),
                expected_rows: er,
                expected_cols: ec,
            });
        }
        Ok(ChernCharacter {
            geometry,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor from machine integers, row by row.
    pub fn from_i64_rows(geometry: Geometry, rows: &[&[i64]]) -> Result<Self, Error> {
        Self::from_rows(
            geometry,
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn geometry(&self) -> Geometry {
        self.geometry
    }

    fn cols(&self) -> usize {
        self.geometry.shape().1
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols() + j]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, value: BigInt) {
        let idx = i * self.cols() + j;
        self.entries[idx] = value;
    }

    /// a_00, the rank.
    pub fn rank(&self) -> &BigInt {
        self.entry(0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn as_coh(&self) -> CohClass {
        CohClass {
            geometry: self.geometry,
            entries: self.entries.iter().map(Rat::from).collect(),
        }
    }

    /// Degree-2 part a_01 e_0⊗f_1 + a_10 e_1⊗f_0.
    pub fn c1_class(&self) -> CohClass {
        self.as_coh().graded_component(1)
    }

    /// Degree-4 part (antidiagonal i + j = 2).
    pub fn ch2_class(&self) -> CohClass {
        self.as_coh().graded_component(2)
    }

    pub fn neg(&self) -> Self {
        ChernCharacter {
            geometry: self.geometry,
            entries: self.entries.iter().map(|e| -e).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        if self.geometry != other.geometry {
            return Err(Error::GeometryMismatch {
                left: self.geometry,
                right: other.geometry,
            });
        }
        Ok(ChernCharacter {
            geometry: self.geometry,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.add(&other.neg())
    }

    pub fn scale_int(&self, k: i64) -> Self {
        ChernCharacter {
            geometry: self.geometry,
            entries: self.entries.iter().map(|e| e * k).collect(),
        }
    }

    /// χ = ∫ ch · td(X), computed in the ring.
    ///
    /// Threefold: a_12 + 2 a_10. Surface: a_11 + (1−g) a_10. Always an
    /// integer on integral characters; returned as a rational because it is
    /// produced by `integrate`.
    pub fn euler_characteristic(&self) -> Rat {
        self.as_coh()
            .cup(&todd_class(self.geometry))
            .expect("same geometry by construction")
            .integrate()
    }

    /// Chern character of the restriction to a generic section {c} × S:
    /// the first row (a_00, a_01, a_02), or (a_00, a_01) on the surface.
    pub fn restrict_to_section(&self) -> Vec<BigInt> {
        let (_, cols) = self.geometry.shape();
        (0..cols).map(|j| self.entry(0, j).clone()).collect()
    }

    /// Chern character of the restriction to a generic fiber C × {s}:
    /// the first column (a_00, a_10).
    pub fn restrict_to_fiber(&self) -> (BigInt, BigInt) {
        (self.entry(0, 0).clone(), self.entry(1, 0).clone())
    }
}

impl fmt::Debug for ChernCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (rows, cols) = self.geometry.shape();
        write!(f, "(")?;
        for i in 0..rows {
            if i > 0 {
                write!(f, ";")?;
            }
            for j in 0..cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.entry(i, j))?;
            }
        }
        write!(f, ")")
    }
}

impl fmt::Display for ChernCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct ChernRepr {
    geometry: Geometry,
    matrix: Vec<Vec<Rat>>,
}

impl TryFrom<ChernRepr> for ChernCharacter {
    type Error = Error;

    fn try_from(repr: ChernRepr) -> Result<Self, Error> {
        let mut rows = Vec::with_capacity(repr.matrix.len());
        for (i, row) in repr.matrix.into_iter().enumerate() {
            let mut out = Vec::with_capacity(row.len());
            for (j, v) in row.into_iter().enumerate() {
                let int = v.to_integer().ok_or_else(|| Error::NonIntegralEntry {
                    i,
                    j,
                    value: v.to_string(),
                })?;
                out.push(int);
            }
            rows.push(out);
        }
        ChernCharacter::from_rows(repr.geometry, rows)
    }
}

impl From<ChernCharacter> for ChernRepr {
    fn from(ch: ChernCharacter) -> ChernRepr {
        let (rows, cols) = ch.geometry.shape();
        ChernRepr {
            geometry: ch.geometry,
            matrix: (0..rows)
                .map(|i| (0..cols).map(|j| Rat::from(ch.entry(i, j))).collect())
                .collect(),
        }
    }
}

/// A divisor class α (e_0⊗f_1) + β (e_1⊗f_0).
///
/// On the threefold, e_0⊗f_1 is D = π*H_S and e_1⊗f_0 is the zero section H;
/// on the surface, they are the fiber class f and the horizontal section h.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DivisorClass {
    pub alpha: Rat,
    pub beta: Rat,
}

impl DivisorClass {
    pub fn new(alpha: Rat, beta: Rat) -> Self {
        DivisorClass { alpha, beta }
    }

    /// The fiber-like polarisation H + nD (threefold) or h + sf (surface).
    pub fn fiber_weighted(weight: Rat) -> Self {
        DivisorClass {
            alpha: weight,
            beta: Rat::one(),
        }
    }

    /// Interior of the ample cone: both coefficients strictly positive.
    pub fn is_ample(&self) -> bool {
        self.alpha.is_positive() && self.beta.is_positive()
    }

    pub fn as_coh(&self, geometry: Geometry) -> CohClass {
        let mut c = CohClass::zero(geometry);
        c.set(0, 1, self.alpha.clone());
        c.set(1, 0, self.beta.clone());
        c
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.alpha, self.beta)
    }
}

fn factorial(k: usize) -> Rat {
    let mut out = Rat::one();
    for i in 2..=k {
        out = out * Rat::from_int(i as i64);
    }
    out
}

/// Exact Hilbert polynomial P(m) = χ(ch ⊗ O(m ω)) = ∫ ch · exp(mω) · td(X).
///
/// Every intersection number is computed through `cup`/`integrate`; nothing
/// is hand-expanded. P(0) is the Euler characteristic by construction.
pub fn hilbert_polynomial(ch: &ChernCharacter, omega: &DivisorClass) -> RationalPoly {
    let geometry = ch.geometry();
    let base = ch
        .as_coh()
        .cup(&todd_class(geometry))
        .expect("same geometry by construction");
    let w = omega.as_coh(geometry);
    let mut coeffs = Vec::with_capacity(geometry.dim() + 1);
    let mut power = CohClass::unit(geometry);
    for k in 0..=geometry.dim() {
        if k > 0 {
            power = power.cup(&w).expect("same geometry by construction");
        }
        let c = base.cup(&power).expect("same geometry").integrate() / factorial(k);
        coeffs.push(c);
    }
    RationalPoly::from_coeffs(FormalParam::M, coeffs)
}

/// Hilbert polynomial for the fiber-like family of polarisations, with the
/// fiber weight left symbolic: ω = H + nD (threefold) or ω = h + sf (surface).
///
/// The result is a polynomial in m whose coefficients are polynomials in the
/// weight parameter (n or s).
#[derive(Clone, PartialEq, Eq)]
pub struct FormalHilbert {
    weight_param: FormalParam,
    m_coeffs: Vec<RationalPoly>,
}

impl FormalHilbert {
    /// Coefficient of m^k, a polynomial in the weight parameter.
    pub fn m_coeff(&self, k: usize) -> RationalPoly {
        self.m_coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| RationalPoly::zero(self.weight_param))
    }

    pub fn m_degree_bound(&self) -> usize {
        self.m_coeffs.len().saturating_sub(1)
    }

    pub fn weight_param(&self) -> FormalParam {
        self.weight_param
    }

    /// Specialise the weight parameter to a numeric value.
    pub fn eval_weight(&self, value: &Rat) -> RationalPoly {
        RationalPoly::from_coeffs(
            FormalParam::M,
            self.m_coeffs.iter().map(|p| p.eval(value)).collect(),
        )
    }
}

impl fmt::Display for FormalHilbert {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.m_coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*m")?,
                _ => write!(f, "({c})*m^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Expand ∫ ch · exp(m(βH + nD)) · td with β = 1 and n formal.
///
/// The m^k coefficient is Σ_j C(k,j) n^j ∫ ch·td·D^j·H^(k−j) / k!, so only
/// numeric ring operations are needed.
pub fn hilbert_polynomial_formal(ch: &ChernCharacter) -> FormalHilbert {
    let geometry = ch.geometry();
    let weight_param = if geometry.is_threefold() {
        FormalParam::N
    } else {
        FormalParam::S
    };
    let base = ch
        .as_coh()
        .cup(&todd_class(geometry))
        .expect("same geometry by construction");
    let d_class = CohClass::basis(geometry, 0, 1);
    let h_class = CohClass::basis(geometry, 1, 0);

    // d_pows[j] = D^j, h_pows[j] = H^j
    let dim = geometry.dim();
    let mut d_pows = vec![CohClass::unit(geometry)];
    let mut h_pows = vec![CohClass::unit(geometry)];
    for j in 1..=dim {
        d_pows.push(d_pows[j - 1].cup(&d_class).expect("same geometry"));
        h_pows.push(h_pows[j - 1].cup(&h_class).expect("same geometry"));
    }

    let mut m_coeffs = Vec::with_capacity(dim + 1);
    for k in 0..=dim {
        let kfact = factorial(k);
        let mut weight_coeffs = vec![Rat::zero(); k + 1];
        let mut binom = Rat::one();
        for (j, slot) in weight_coeffs.iter_mut().enumerate() {
            // binom = C(k, j)
            if j > 0 {
                binom = binom * Rat::from_int((k - j + 1) as i64) / Rat::from_int(j as i64);
            }
            let mixed = d_pows[j].cup(&h_pows[k - j]).expect("same geometry");
            let val = base.cup(&mixed).expect("same geometry").integrate();
            *slot = (&binom * &val) / kfact.clone();
        }
        m_coeffs.push(RationalPoly::from_coeffs(weight_param, weight_coeffs));
    }
    FormalHilbert {
        weight_param,
        m_coeffs,
    }
}
