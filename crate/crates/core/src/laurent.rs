//! Sparse Laurent polynomials in one variable `q` with integer coefficients.
//!
//! [`LaurentPoly`] is the workhorse scalar of the whole crate: matrix entries
//! of the three-dimensional solitonic operators, q-binomial coefficients, and
//! the numerators of spectral sums are all values of this type. Exponents may
//! be negative; coefficients are arbitrary-precision integers.
//!
//! Also provided are the standard q-analogues used throughout:
//! [`q_binomial`] (Gaussian binomial coefficients in an arbitrary integer
//! power of `q`), [`q_pochhammer`] (finite products `(1-q^b)(1-q^{2b})...`),
//! [`q_pochhammer_ratio`] (shifted-over-plain quotients of such products,
//! computed without division), and [`divide_exact`] for divisions that are
//! required to close inside the polynomial ring.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num::bigint::BigInt;
use num::traits::{One, Signed, Zero};
use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::rational::{rational_pow, ExactRational};

/// A sparse Laurent polynomial over the integers.
///
/// Internally a map from exponent to nonzero coefficient; the zero polynomial
/// is the empty map, so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Self::default()
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        Self::constant(1)
    }

    /// A constant polynomial.
    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(0, c)
    }

    /// The single term `c * q^exp`; returns zero when `c` is zero.
    pub fn monomial(exp: i64, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// The monomial `q^exp`.
    pub fn q_power(exp: i64) -> Self {
        Self::monomial(exp, 1)
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for the constant polynomial 1.
    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&0)
                .is_some_and(|c| c.is_one())
    }

    /// The coefficient of `q^exp` (zero when absent).
    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Iterates over `(exponent, coefficient)` pairs in ascending exponent
    /// order. All yielded coefficients are nonzero.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    /// Number of nonzero terms.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Smallest exponent with nonzero coefficient, i.e. the q-valuation.
    /// `None` for the zero polynomial.
    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Largest exponent with nonzero coefficient. `None` for zero.
    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Adds `c * q^exp` in place.
    pub fn add_term(&mut self, exp: i64, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
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

    /// Returns `self * c * q^exp` without constructing an intermediate
    /// polynomial.
    pub fn mul_monomial(&self, exp: i64, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (e + exp, k * c))
                .collect(),
        }
    }

    /// Returns `self * q^delta`.
    pub fn shifted(&self, delta: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + delta, c.clone())).collect(),
        }
    }

    /// Substitutes `q -> q^k` for a positive integer `k`.
    pub fn stretched(&self, k: i64) -> Self {
        assert!(k > 0, "stretched: exponent multiplier must be positive, got {k}");
        Self {
            terms: self.terms.iter().map(|(e, c)| (e * k, c.clone())).collect(),
        }
    }

    /// Evaluates at an exact rational point.
    ///
    /// # Errors
    ///
    /// Returns [`Error::PoleAtPoint`] when `q` is zero and a term has a
    /// negative exponent.
    pub fn eval(&self, q: &ExactRational) -> Result<ExactRational, Error> {
        let mut acc = ExactRational::zero();
        for (e, c) in &self.terms {
            let p = rational_pow(q, *e)?;
            acc += p * ExactRational::from(c.clone());
        }
        Ok(acc)
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c);
        }
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, &(-c));
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut terms: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                use std::collections::btree_map::Entry;
                let prod = c1 * c2;
                match terms.entry(e1 + e2) {
                    Entry::Vacant(v) => {
                        v.insert(prod);
                    }
                    Entry::Occupied(mut o) => {
                        *o.get_mut() += prod;
                        if o.get().is_zero() {
                            o.remove();
                        }
                    }
                }
            }
        }
        LaurentPoly { terms }
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            let negative = c.is_negative();
            let mag = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = mag.is_one();
            match (*e, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}*q")?,
                (_, true) => write!(f, "q^{e}")?,
                (_, false) => write!(f, "{mag}*q^{e}")?,
            }
        }
        Ok(())
    }
}

/// Serialized as a list of `[exponent, "coefficient"]` pairs in ascending
/// exponent order; coefficients are decimal strings so arbitrary precision
/// survives the round-trip.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            seq.serialize_element(&(*e, c.to_str_radix(10)))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = LaurentPoly;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "a list of [exponent, coefficient-string] pairs")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Self::Value, A::Error> {
                let mut out = LaurentPoly::zero();
                while let Some((e, c)) = seq.next_element::<(i64, String)>()? {
                    let c = c
                        .parse::<BigInt>()
                        .map_err(|err| de::Error::custom(format!("bad coefficient {c:?}: {err}")))?;
                    out.add_term(e, &c);
                }
                Ok(out)
            }
        }
        deserializer.deserialize_seq(V)
    }
}

/// Gaussian binomial coefficient `binom(m, k)` in the variable `q^base`.
///
/// Computed by the Pascal-type recurrence
/// `binom(m, k) = binom(m-1, k-1) + t^k * binom(m-1, k)` with `t = q^base`,
/// which stays entirely inside the polynomial ring. Returns zero when
/// `k < 0` or `k > m`.
///
/// # Panics
///
/// Panics when `base` is zero (use ordinary binomials instead).
pub fn q_binomial(m: u64, k: i64, base: u32) -> LaurentPoly {
    assert!(base > 0, "q_binomial: base exponent must be positive");
    if k < 0 || k as u64 > m {
        return LaurentPoly::zero();
    }
    let k = (k as u64).min(m - k as u64) as usize;
    // Row-by-row Pascal triangle, keeping only columns 0..=k.
    let mut row: Vec<LaurentPoly> = vec![LaurentPoly::one()];
    for _ in 1..=m {
        let prev = row;
        let width = (prev.len() + 1).min(k + 1);
        let mut next = Vec::with_capacity(width);
        next.push(LaurentPoly::one());
        for j in 1..width {
            let mut entry = prev[j - 1].clone();
            if let Some(upper) = prev.get(j) {
                entry += &upper.shifted(i64::from(base) * j as i64);
            }
            next.push(entry);
        }
        row = next;
    }
    row.swap_remove(k)
}

/// The finite product `(1 - q^base)(1 - q^{2 base}) ... (1 - q^{m base})`.
pub fn q_pochhammer(m: u64, base: u32) -> LaurentPoly {
    let mut acc = LaurentPoly::one();
    for s in 1..=m {
        let factor = &LaurentPoly::one() - &LaurentPoly::q_power(i64::from(base) * s as i64);
        acc = &acc * &factor;
    }
    acc
}

/// The quotient of shifted over plain Pochhammer products,
/// `prod_{s=1}^{mu} (1 - q^{base*(c+s)})`, computed directly as a product so
/// no division is involved.
pub fn q_pochhammer_ratio(c: u64, mu: u64, base: u32) -> LaurentPoly {
    let mut acc = LaurentPoly::one();
    for s in 1..=mu {
        let factor =
            &LaurentPoly::one() - &LaurentPoly::q_power(i64::from(base) * (c + s) as i64);
        acc = &acc * &factor;
    }
    acc
}

/// Exact division `num / den` inside the Laurent polynomial ring.
///
/// Division proceeds by ascending exponents, so it terminates whenever the
/// quotient exists as a Laurent polynomial.
///
/// # Errors
///
/// Returns [`Error::NonPolynomialResult`] when `den` does not divide `num`.
///
/// # Panics
///
/// Panics when `den` is zero.
pub fn divide_exact(num: &LaurentPoly, den: &LaurentPoly) -> Result<LaurentPoly, Error> {
    assert!(!den.is_zero(), "divide_exact: division by zero polynomial");
    if num.is_zero() {
        return Ok(LaurentPoly::zero());
    }
    let den_min = den.min_exp().expect("nonzero denominator has terms");
    let den_max = den.max_exp().expect("nonzero denominator has terms");
    let num_max = num.max_exp().expect("nonzero numerator has terms");
    // If the quotient is a polynomial, its top exponent is num_max - den_max.
    let quot_max = num_max - den_max;
    let lead = den.coeff(den_min);
    let mut rem = num.clone();
    let mut quot = LaurentPoly::zero();
    while let Some(e_r) = rem.min_exp() {
        let e_q = e_r - den_min;
        if e_q > quot_max {
            return Err(Error::NonPolynomialResult);
        }
        let c_r = rem.coeff(e_r);
        let (c_q, r) = num::Integer::div_rem(&c_r, &lead);
        if !r.is_zero() {
            return Err(Error::NonPolynomialResult);
        }
        quot.add_term(e_q, &c_q);
        rem -= &den.mul_monomial(e_q, &c_q);
    }
    Ok(quot)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::parse_rational;

    fn poly(terms: &[(i64, i64)]) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(*e, &BigInt::from(*c));
        }
        p
    }

    #[test]
    fn arithmetic_basics() {
        let a = poly(&[(0, 1), (2, -1)]); // 1 - q^2
        let b = poly(&[(0, 1), (2, 1)]); // 1 + q^2
        assert_eq!(&a * &b, poly(&[(0, 1), (4, -1)])); // 1 - q^4
        assert_eq!(&a + &b, poly(&[(0, 2)]));
        assert_eq!(&a - &a, LaurentPoly::zero());
        assert_eq!(-&a, poly(&[(0, -1), (2, 1)]));
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn cancellation_removes_entries() {
        let a = poly(&[(3, 5)]);
        let b = poly(&[(3, -5), (1, 2)]);
        let sum = &a + &b;
        assert_eq!(sum.num_terms(), 1);
        assert_eq!(sum.coeff(1), BigInt::from(2));
        assert_eq!(sum.min_exp(), Some(1));
        assert_eq!(sum.max_exp(), Some(1));
    }

    #[test]
    fn negative_exponents_and_shift() {
        let p = poly(&[(-2, 1), (0, 3)]);
        assert_eq!(p.shifted(2), poly(&[(0, 1), (2, 3)]));
        assert_eq!(p.mul_monomial(1, &BigInt::from(-2)), poly(&[(-1, -2), (1, -6)]));
        assert_eq!(p.stretched(3), poly(&[(-6, 1), (0, 3)]));
    }

    #[test]
    fn eval_exact() {
        // 1 - q^2 + 2 q^{-1} at q = 1/2: 1 - 1/4 + 4 = 19/4.
        let p = poly(&[(0, 1), (2, -1), (-1, 2)]);
        let q = parse_rational("1/2").unwrap();
        assert_eq!(p.eval(&q).unwrap(), parse_rational("19/4").unwrap());
        // Pole at q = 0 from the q^{-1} term.
        assert!(p.eval(&ExactRational::zero()).is_err());
        // Nonnegative exponents evaluate fine at zero.
        let r = poly(&[(0, 7), (3, -2)]);
        assert_eq!(r.eval(&ExactRational::zero()).unwrap(), parse_rational("7").unwrap());
    }

    #[test]
    fn q_binomial_small_values() {
        // binom(m, k) at base 1: classical Gaussian binomials.
        assert_eq!(q_binomial(0, 0, 1), LaurentPoly::one());
        assert_eq!(q_binomial(2, 1, 1), poly(&[(0, 1), (1, 1)]));
        assert_eq!(q_binomial(4, 2, 1), poly(&[(0, 1), (1, 1), (2, 2), (3, 1), (4, 1)]));
        assert_eq!(q_binomial(3, 5, 1), LaurentPoly::zero());
        assert_eq!(q_binomial(3, -1, 1), LaurentPoly::zero());
        // Base 2 doubles every exponent.
        assert_eq!(q_binomial(2, 1, 2), poly(&[(0, 1), (2, 1)]));
    }

    #[test]
    fn q_binomial_symmetry_and_pascal() {
        for m in 0..=8u64 {
            for k in 0..=m {
                let lhs = q_binomial(m, k as i64, 2);
                assert_eq!(lhs, q_binomial(m, (m - k) as i64, 2), "symmetry at ({m},{k})");
                if m > 0 {
                    let pascal = &q_binomial(m - 1, k as i64 - 1, 2)
                        + &q_binomial(m - 1, k as i64, 2).shifted(2 * k as i64);
                    assert_eq!(lhs, pascal, "Pascal recurrence at ({m},{k})");
                }
                // Specializing q -> 1 must give the ordinary binomial.
                let at_one = lhs.eval(&ExactRational::one()).unwrap();
                let classical: u64 = (0..k).fold(1, |acc, t| acc * (m - t) / (t + 1));
                assert_eq!(at_one, ExactRational::from(BigInt::from(classical)));
            }
        }
    }

    #[test]
    fn pochhammer_products() {
        assert_eq!(q_pochhammer(0, 2), LaurentPoly::one());
        assert_eq!(q_pochhammer(1, 2), poly(&[(0, 1), (2, -1)]));
        assert_eq!(
            q_pochhammer(2, 2),
            poly(&[(0, 1), (2, -1), (4, -1), (6, 1)])
        );
        // Ratio agrees with an explicit quotient of full products.
        let full = q_pochhammer(5, 2);
        let base = q_pochhammer(3, 2);
        let ratio = q_pochhammer_ratio(3, 2, 2);
        assert_eq!(&base * &ratio, full);
    }

    #[test]
    fn exact_division() {
        let a = poly(&[(0, 1), (2, -1)]);
        let b = poly(&[(0, 1), (2, 1)]);
        let prod = &a * &b;
        assert_eq!(divide_exact(&prod, &a).unwrap(), b);
        assert_eq!(divide_exact(&prod, &b).unwrap(), a);
        // Laurent shift in the denominator is handled.
        let shifted = a.shifted(-3);
        assert_eq!(divide_exact(&prod, &shifted).unwrap(), b.shifted(3));
        // Non-divisible input is reported, not looped on.
        assert_eq!(
            divide_exact(&poly(&[(0, 1), (1, 1)]), &a),
            Err(Error::NonPolynomialResult)
        );
        assert_eq!(
            divide_exact(&poly(&[(0, 3)]), &poly(&[(0, 2)])),
            Err(Error::NonPolynomialResult)
        );
    }

    #[test]
    fn display_formatting() {
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(poly(&[(0, -3)]).to_string(), "-3");
        assert_eq!(poly(&[(1, 1)]).to_string(), "q");
        assert_eq!(
            poly(&[(-2, 1), (0, -2), (3, 5)]).to_string(),
            "q^-2 - 2 + 5*q^3"
        );
    }

    #[test]
    fn serde_round_trip() {
        let p = poly(&[(-4, 123), (0, -1), (7, 999)]);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"[[-4,"123"],[0,"-1"],[7,"999"]]"#);
        let back: LaurentPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
    }
}
