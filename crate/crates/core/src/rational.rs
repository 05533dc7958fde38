//! Exact rational scalars.
//!
//! Provides [`ExactRational`] (an arbitrary-precision reduced fraction), a
//! strict parser for command-line style literals, and integer-exponent powers
//! with explicit pole detection. All numeric verification in this crate
//! evaluates polynomials and rational functions over this type; floating
//! point is never used.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};

use crate::error::Error;

/// Arbitrary-precision rational number, always kept in lowest terms.
pub type ExactRational = BigRational;

/// Parses a rational literal such as `"2/3"`, `"-7"`, or `"0"`.
///
/// Both numerator and denominator may be arbitrarily large integers. The
/// result is reduced.
///
/// # Errors
///
/// Returns [`Error::Parse`] for malformed input and
/// [`Error::DegenerateParameter`] for a zero denominator.
pub fn parse_rational(s: &str) -> Result<ExactRational, Error> {
    let s = s.trim();
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = num_str
        .parse::<BigInt>()
        .map_err(|e| Error::Parse(format!("bad numerator {num_str:?}: {e}")))?;
    let den = den_str
        .parse::<BigInt>()
        .map_err(|e| Error::Parse(format!("bad denominator {den_str:?}: {e}")))?;
    if den.is_zero() {
        return Err(Error::DegenerateParameter(format!(
            "zero denominator in {s:?}"
        )));
    }
    Ok(ExactRational::new(num, den))
}

/// Raises `base` to the (possibly negative) integer power `exp`.
///
/// # Errors
///
/// Returns [`Error::PoleAtPoint`] when `base` is zero and `exp` is negative.
pub fn rational_pow(base: &ExactRational, exp: i64) -> Result<ExactRational, Error> {
    if exp == 0 {
        return Ok(ExactRational::one());
    }
    if base.is_zero() {
        if exp < 0 {
            return Err(Error::PoleAtPoint(format!("0^{exp}")));
        }
        return Ok(ExactRational::zero());
    }
    let mut result = ExactRational::one();
    let mut square = base.clone();
    let mut e = exp.unsigned_abs();
    while e > 0 {
        if e & 1 == 1 {
            result *= &square;
        }
        e >>= 1;
        if e > 0 {
            square = &square * &square;
        }
    }
    if exp < 0 {
        result = result.recip();
    }
    Ok(result)
}

/// Returns true when `r` is one of the values `0`, `1`, `-1` at which the
/// q-deformed algebras in this crate degenerate.
pub fn is_degenerate_q(r: &ExactRational) -> bool {
    r.is_zero() || r.abs().is_one()
}
