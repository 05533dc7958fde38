//! Sparse polynomials in two variables: Laurent in `q`, ordinary in `z`.
//!
//! [`BiPoly`] is the numerator/denominator arithmetic behind spectral sums:
//! putting a sum of geometric series over a common denominator produces
//! polynomials in `z` whose coefficients are Laurent polynomials in `q`.
//! Keys are `(q_exponent, z_exponent)` pairs ordered by z-degree first, so
//! slicing by powers of `z` is a contiguous walk.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg};

use num::bigint::BigInt;
use num::traits::Zero;

use crate::error::Error;
use crate::laurent::LaurentPoly;
use crate::rational::{rational_pow, ExactRational};

/// A polynomial in `z` with Laurent-polynomial-in-`q` coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    /// Map from `(z_exponent, q_exponent)` to coefficient.
    terms: BTreeMap<(u32, i64), BigInt>,
}

impl BiPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Self::default()
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        Self::monomial(0, 0, 1)
    }

    /// The single term `c * q^{q_exp} z^{z_exp}`.
    pub fn monomial(q_exp: i64, z_exp: u32, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((z_exp, q_exp), c);
        }
        Self { terms }
    }

    /// Embeds a Laurent polynomial in `q` as a `z`-degree-zero polynomial.
    pub fn from_laurent(p: &LaurentPoly) -> Self {
        let mut out = Self::zero();
        for (e, c) in p.terms() {
            out.terms.insert((0, e), c.clone());
        }
        out
    }

    /// The binomial `1 - z q^k`.
    pub fn one_minus_z_q(k: i64) -> Self {
        let mut out = Self::one();
        out.add_term(k, 1, &BigInt::from(-1));
        out
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c * q^{q_exp} z^{z_exp}` in place.
    pub fn add_term(&mut self, q_exp: i64, z_exp: u32, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((z_exp, q_exp)) {
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

    /// Multiplies by `z^k` in place.
    pub fn mul_z_power(&mut self, k: u32) {
        if k == 0 || self.is_zero() {
            return;
        }
        self.terms = std::mem::take(&mut self.terms)
            .into_iter()
            .map(|((z, q), c)| ((z + k, q), c))
            .collect();
    }

    /// Returns `self * p` where `p` depends on `q` alone.
    pub fn mul_laurent(&self, p: &LaurentPoly) -> Self {
        self * &Self::from_laurent(p)
    }

    /// The smallest `q`-exponent appearing in any term, i.e. the valuation
    /// of the polynomial viewed as a Laurent series in `q`. `None` for zero.
    pub fn q_valuation(&self) -> Option<i64> {
        self.terms.keys().map(|(_, q)| *q).min()
    }

    /// The largest `z`-exponent appearing. `None` for zero.
    pub fn z_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|(z, _)| *z)
    }

    /// The coefficient of `q^{q_exp}` as a polynomial in `z`, returned as a
    /// map from `z`-exponent to integer coefficient.
    pub fn q_slice(&self, q_exp: i64) -> BTreeMap<u32, BigInt> {
        self.terms
            .iter()
            .filter(|((_, q), _)| *q == q_exp)
            .map(|((z, _), c)| (*z, c.clone()))
            .collect()
    }

    /// The coefficient of `z^{z_exp}` as a Laurent polynomial in `q`.
    pub fn z_slice(&self, z_exp: u32) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for ((z, q), c) in &self.terms {
            if *z == z_exp {
                out.add_term(*q, c);
            }
        }
        out
    }

    /// Evaluates at an exact rational point `(q, z)`.
    ///
    /// # Errors
    ///
    /// Returns [`Error::PoleAtPoint`] when `q` is zero and a negative
    /// `q`-exponent occurs.
    pub fn eval(&self, q: &ExactRational, z: &ExactRational) -> Result<ExactRational, Error> {
        let mut acc = ExactRational::zero();
        for ((ze, qe), c) in &self.terms {
            let term = rational_pow(q, *qe)? * rational_pow(z, i64::from(*ze))?;
            acc += term * ExactRational::from(c.clone());
        }
        Ok(acc)
    }
}

impl AddAssign<&BiPoly> for BiPoly {
    fn add_assign(&mut self, rhs: &BiPoly) {
        for ((z, q), c) in &rhs.terms {
            self.add_term(*q, *z, c);
        }
    }
}

impl Add<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Mul<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for ((z1, q1), c1) in &self.terms {
            for ((z2, q2), c2) in &rhs.terms {
                out.add_term(q1 + q2, z1 + z2, &(c1 * c2));
            }
        }
        out
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let top = self.z_degree().unwrap_or(0);
        let mut first = true;
        for z in 0..=top {
            let slice = self.z_slice(z);
            if slice.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match z {
                0 => write!(f, "({slice})")?,
                1 => write!(f, "({slice})*z")?,
                _ => write!(f, "({slice})*z^{z}")?,
            }
        }
        Ok(())
    }
}
