//! Univariate polynomials over `Rat` with eventual-sign comparison.
//!
//! "Semistable for n ≫ 0" statements reduce to the sign a polynomial takes for
//! all sufficiently large values of its parameter. That sign is the sign of
//! the leading coefficient, and a concrete witness threshold comes from the
//! Cauchy root bound, so no numeric cutoff is ever guessed.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::Error;
use crate::rational::Rat;

/// The formal parameter a polynomial is written in.
///
/// `M` is the Hilbert-polynomial variable, `N` the fiber weight of the
/// threefold polarisation H + nD, and `S` the fiber weight of the surface
/// polarisation th + sf.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormalParam {
    M,
    N,
    S,
}

impl fmt::Display for FormalParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            FormalParam::M => 'm',
            FormalParam::N => 'n',
            FormalParam::S => 's',
        };
        write!(f, "{c}")
    }
}

/// Dense polynomial in one formal parameter, coefficients in ascending degree.
///
/// Canonical form: trailing zero coefficients are stripped, so the zero
/// polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalPoly {
    param: FormalParam,
    coeffs: Vec<Rat>,
}

impl RationalPoly {
    pub fn zero(param: FormalParam) -> Self {
        RationalPoly {
            param,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(param: FormalParam, c: Rat) -> Self {
        Self::from_coeffs(param, vec![c])
    }

    /// The monomial c·x^deg.
    pub fn monomial(param: FormalParam, c: Rat, deg: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); deg + 1];
        coeffs[deg] = c;
        Self::from_coeffs(param, coeffs)
    }

    /// Build from ascending-degree coefficients, stripping trailing zeros.
    pub fn from_coeffs(param: FormalParam, coeffs: Vec<Rat>) -> Self {
        let mut p = RationalPoly { param, coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Rat::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn param(&self) -> FormalParam {
        self.param
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of x^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading_coeff(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::from_coeffs(
            self.param,
            self.coeffs.iter().map(|a| a * c).collect(),
        )
    }

    /// Sign taken for all sufficiently large parameter values: the sign of
    /// the leading coefficient, or 0 for the zero polynomial.
    pub fn eventual_sign(&self) -> i32 {
        self.leading_coeff().map_or(0, Rat::signum)
    }

    /// A threshold beyond which the polynomial keeps its eventual sign:
    /// 1 + max |c_i / c_lead| (the Cauchy root bound). Zero polynomial → 1.
    pub fn sign_threshold(&self) -> Rat {
        let Some(lead) = self.leading_coeff() else {
            return Rat::one();
        };
        let mut bound = Rat::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let ratio = (c / lead).abs();
            if ratio > bound {
                bound = ratio;
            }
        }
        bound + Rat::one()
    }

    fn check_param(&self, other: &Self) -> Result<(), Error> {
        if self.param != other.param {
            return Err(Error::ParamMismatch {
                left: self.param,
                right: other.param,
            });
        }
        Ok(())
    }
}

/// Sign of `p - q` for all large parameter values, as an ordering.
///
/// `Equal` only when the two polynomials are identical.
pub fn poly_compare_large_param(p: &RationalPoly, q: &RationalPoly) -> Result<Ordering, Error> {
    p.check_param(q)?;
    let diff = p - q;
    Ok(match diff.eventual_sign() {
        s if s > 0 => Ordering::Greater,
        s if s < 0 => Ordering::Less,
        _ => Ordering::Equal,
    })
}

fn assert_same_param(a: &RationalPoly, b: &RationalPoly) {
    assert_eq!(
        a.param, b.param,
        "polynomial arithmetic across distinct formal parameters"
    );
}

impl Add<&RationalPoly> for &RationalPoly {
    type Output = RationalPoly;
    fn add(self, rhs: &RationalPoly) -> RationalPoly {
        assert_same_param(self, rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        RationalPoly::from_coeffs(self.param, coeffs)
    }
}

impl Sub<&RationalPoly> for &RationalPoly {
    type Output = RationalPoly;
    fn sub(self, rhs: &RationalPoly) -> RationalPoly {
        assert_same_param(self, rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        RationalPoly::from_coeffs(self.param, coeffs)
    }
}

impl Mul<&RationalPoly> for &RationalPoly {
    type Output = RationalPoly;
    fn mul(self, rhs: &RationalPoly) -> RationalPoly {
        assert_same_param(self, rhs);
        if self.is_zero() || rhs.is_zero() {
            return RationalPoly::zero(self.param);
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += &(a * b);
            }
        }
        RationalPoly::from_coeffs(self.param, coeffs)
    }
}

impl Neg for &RationalPoly {
    type Output = RationalPoly;
    fn neg(self) -> RationalPoly {
        RationalPoly::from_coeffs(self.param, self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                first = false;
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            match deg {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != Rat::one() {
                        write!(f, "{a}*")?;
                    }
                    write!(f, "{}", self.param)?;
                    if deg > 1 {
                        write!(f, "^{deg}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
