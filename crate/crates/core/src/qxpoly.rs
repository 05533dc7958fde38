//! Polynomials in an auxiliary variable `X` with Laurent coefficients in `q`.
//!
//! In the layer-transfer computation of matrix-product operators, every
//! internal occupation number enters only through powers `X = q^c` of a
//! single geometric variable. [`QxPoly`] keeps that dependence symbolic:
//! multiplying the per-layer factors yields one polynomial whose `X`-slices
//! are exactly the geometric slopes of the resulting spectral sum.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul};

use num::bigint::BigInt;
use num::traits::Zero;

use crate::laurent::LaurentPoly;

/// A sparse polynomial in `X` whose coefficients are Laurent polynomials in
/// `q`. `X`-exponents are signed so intermediate bookkeeping with shifted
/// slopes stays representable, though products of layer factors only ever
/// produce nonnegative powers.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QxPoly {
    /// Map from `(x_exponent, q_exponent)` to coefficient.
    terms: BTreeMap<(i64, i64), BigInt>,
}

impl QxPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Self::default()
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        Self::monomial(0, 0, 1)
    }

    /// The single term `c * q^{q_exp} X^{x_exp}`.
    pub fn monomial(x_exp: i64, q_exp: i64, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((x_exp, q_exp), c);
        }
        Self { terms }
    }

    /// Embeds a pure-`q` Laurent polynomial at `X`-degree `x_exp`.
    pub fn from_laurent_at(p: &LaurentPoly, x_exp: i64) -> Self {
        let mut out = Self::zero();
        for (e, c) in p.terms() {
            out.terms.insert((x_exp, e), c.clone());
        }
        out
    }

    /// The binomial `1 - q^{q_exp} X^{x_exp}`.
    pub fn one_minus(q_exp: i64, x_exp: i64) -> Self {
        let mut out = Self::one();
        out.add_term(x_exp, q_exp, &BigInt::from(-1));
        out
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c * q^{q_exp} X^{x_exp}` in place.
    pub fn add_term(&mut self, x_exp: i64, q_exp: i64, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((x_exp, q_exp)) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Splits into `X`-slices: a map from `X`-exponent to the Laurent
    /// polynomial coefficient of that power.
    pub fn x_slices(&self) -> BTreeMap<i64, LaurentPoly> {
        let mut out: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        for ((x, q), c) in &self.terms {
            out.entry(*x).or_default().add_term(*q, c);
        }
        out.retain(|_, p| !p.is_zero());
        out
    }
}

impl AddAssign<&QxPoly> for QxPoly {
    fn add_assign(&mut self, rhs: &QxPoly) {
        for ((x, q), c) in &rhs.terms {
            self.add_term(*x, *q, c);
        }
    }
}

impl Add<&QxPoly> for &QxPoly {
    type Output = QxPoly;
    fn add(self, rhs: &QxPoly) -> QxPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Mul<&QxPoly> for &QxPoly {
    type Output = QxPoly;
    fn mul(self, rhs: &QxPoly) -> QxPoly {
        let mut out = QxPoly::zero();
        for ((x1, q1), c1) in &self.terms {
            for ((x2, q2), c2) in &rhs.terms {
                out.add_term(x1 + x2, q1 + q2, &(c1 * c2));
            }
        }
        out
    }
}

impl fmt::Display for QxPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (x, p) in self.x_slices() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match x {
                0 => write!(f, "({p})")?,
                1 => write!(f, "({p})*X")?,
                _ => write!(f, "({p})*X^{x}")?,
            }
        }
        Ok(())
    }
}
