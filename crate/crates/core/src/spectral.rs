//! Sums of geometric series in a spectral parameter `z`.
//!
//! Matrix-product operator entries built from infinite Fock-space traces
//! always take the form
//!
//! ```text
//!   sum_t  z^{d_t} * p_t(q) / (1 - z q^{k_t})
//! ```
//!
//! with integer slopes `k_t` (negative slopes are representable) and Laurent
//! numerators `p_t`. [`SpectralSum`] stores that shape exactly, supports
//! common-denominator conversion to a single fraction of [`BiPoly`]s, exact
//! evaluation at rational points, truncated `z`-series expansion, and the
//! scaled `q -> 0` leading behavior needed for the combinatorial limit.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num::traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize};

use crate::bipoly::BiPoly;
use crate::error::Error;
use crate::laurent::LaurentPoly;
use crate::rational::{rational_pow, ExactRational};

/// One geometric series `z^d * p(q) / (1 - z q^k)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralTerm {
    /// Starting power of `z`.
    pub d: u32,
    /// Slope: the series runs over `(z q^k)^c`.
    pub k: i64,
    /// Laurent-polynomial numerator.
    pub p: LaurentPoly,
}

/// A finite sum of geometric series, kept merged and sorted by `(d, k)`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
#[serde(transparent)]
pub struct SpectralSum {
    terms: Vec<SpectralTerm>,
}

/// Leading behavior of a scaled spectral sum as `q -> 0`: either it vanishes
/// or it is a single unit monomial `z^h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "power", rename_all = "snake_case")]
pub enum Q0Limit {
    /// The scaled limit is identically zero.
    Zero,
    /// The scaled limit is `z^h` with coefficient one.
    Monomial(u32),
}

impl SpectralSum {
    /// Builds a sum from arbitrary terms, merging equal `(d, k)` keys and
    /// dropping zero numerators.
    pub fn new(terms: Vec<SpectralTerm>) -> Self {
        let mut merged: BTreeMap<(u32, i64), LaurentPoly> = BTreeMap::new();
        for t in terms {
            if t.p.is_zero() {
                continue;
            }
            *merged.entry((t.d, t.k)).or_default() += &t.p;
        }
        let terms = merged
            .into_iter()
            .filter(|(_, p)| !p.is_zero())
            .map(|((d, k), p)| SpectralTerm { d, k, p })
            .collect();
        Self { terms }
    }

    /// The zero sum.
    pub fn zero() -> Self {
        Self::default()
    }

    /// True when no terms remain after normalization.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The normalized terms, sorted by `(d, k)`.
    pub fn terms(&self) -> &[SpectralTerm] {
        &self.terms
    }

    /// The set of distinct slopes.
    pub fn slopes(&self) -> BTreeSet<i64> {
        self.terms.iter().map(|t| t.k).collect()
    }

    /// Sum of two spectral sums.
    pub fn add(&self, rhs: &SpectralSum) -> SpectralSum {
        let mut terms = self.terms.clone();
        terms.extend(rhs.terms.iter().cloned());
        Self::new(terms)
    }

    /// Multiplies every numerator by a Laurent polynomial in `q`.
    pub fn mul_laurent(&self, p: &LaurentPoly) -> SpectralSum {
        Self::new(
            self.terms
                .iter()
                .map(|t| SpectralTerm { d: t.d, k: t.k, p: &t.p * p })
                .collect(),
        )
    }

    /// Puts the sum over the common denominator `prod_k (1 - z q^k)`, where
    /// `k` ranges over the union of the slopes present and `extra_slopes`.
    ///
    /// Returns the numerator and the sorted slope list of the denominator.
    /// The pair represents the sum exactly: no reduction is attempted.
    pub fn to_fraction(&self, extra_slopes: &[i64]) -> (BiPoly, Vec<i64>) {
        let mut slope_set = self.slopes();
        slope_set.extend(extra_slopes.iter().copied());
        let slopes: Vec<i64> = slope_set.into_iter().collect();
        let mut num = BiPoly::zero();
        for t in &self.terms {
            let mut part = BiPoly::from_laurent(&t.p);
            part.mul_z_power(t.d);
            for &k in &slopes {
                if k != t.k {
                    part = &part * &BiPoly::one_minus_z_q(k);
                }
            }
            num += &part;
        }
        (num, slopes)
    }

    /// Evaluates the sum at an exact rational point.
    ///
    /// # Errors
    ///
    /// Returns [`Error::PoleAtPoint`] when some `1 - z q^k` vanishes at the
    /// point, or when `q = 0` meets a negative exponent.
    pub fn eval(&self, q: &ExactRational, z: &ExactRational) -> Result<ExactRational, Error> {
        let mut acc = ExactRational::zero();
        for t in &self.terms {
            let qk = rational_pow(q, t.k)?;
            let den = ExactRational::one() - z * &qk;
            if den.is_zero() {
                return Err(Error::PoleAtPoint(format!(
                    "1 - z q^{} vanishes at q={q}, z={z}",
                    t.k
                )));
            }
            let zd = rational_pow(z, i64::from(t.d))?;
            acc += t.p.eval(q)? * zd / den;
        }
        Ok(acc)
    }

    /// Expands the sum as a power series in `z`, returning the coefficients
    /// of `z^0 ..= z^max_deg` as Laurent polynomials in `q`.
    pub fn z_series(&self, max_deg: u32) -> Vec<LaurentPoly> {
        let mut coeffs = vec![LaurentPoly::zero(); max_deg as usize + 1];
        for t in &self.terms {
            for c in t.d..=max_deg {
                let shift = t.k * i64::from(c - t.d);
                coeffs[c as usize] += &t.p.shifted(shift);
            }
        }
        coeffs
    }

    /// Leading behavior of `q^{-scale} * self` as `q -> 0`, optionally after
    /// multiplying the sum by `(1 - z)` first (`subtract_unit_pole`), which
    /// removes the slope-zero accumulation pole.
    ///
    /// The sum is put over a common denominator, the factor `(1 - z)` is
    /// cancelled or appended as appropriate, and the `q`-valuations of
    /// numerator and denominator decide the outcome: a positive balance
    /// means the scaled limit vanishes, an exact balance means the limit is
    /// the ratio of the two leading `z`-polynomials, which must divide to a
    /// unit monomial `z^h`.
    ///
    /// # Errors
    ///
    /// Returns [`Error::LimitUndefined`] when the scaled expression diverges
    /// as `q -> 0` or its limit is not zero or a unit monomial.
    pub fn scaled_q0_limit(&self, scale: i64, subtract_unit_pole: bool) -> Result<Q0Limit, Error> {
        if self.is_zero() {
            return Ok(Q0Limit::Zero);
        }
        let (mut num, mut slopes) = self.to_fraction(&[]);
        if subtract_unit_pole {
            if let Some(pos) = slopes.iter().position(|&k| k == 0) {
                slopes.remove(pos);
            } else {
                num = &num * &BiPoly::one_minus_z_q(0);
            }
        }
        if num.is_zero() {
            return Ok(Q0Limit::Zero);
        }
        let mut den = BiPoly::one();
        for &k in &slopes {
            den = &den * &BiPoly::one_minus_z_q(k);
        }
        let v_n = num.q_valuation().expect("nonzero numerator has a valuation");
        let v_d = den.q_valuation().expect("nonzero denominator has a valuation");
        let balance = v_n - v_d - scale;
        if balance > 0 {
            return Ok(Q0Limit::Zero);
        }
        if balance < 0 {
            return Err(Error::LimitUndefined);
        }
        let lead_num = num.q_slice(v_n);
        let lead_den = den.q_slice(v_d);
        let quot = divide_z_polys(&lead_num, &lead_den).ok_or(Error::LimitUndefined)?;
        if quot.len() == 1 {
            let (h, c) = quot.iter().next().expect("nonempty quotient");
            if c.is_one() {
                return Ok(Q0Limit::Monomial(*h));
            }
        }
        Err(Error::LimitUndefined)
    }
}

impl<'de> Deserialize<'de> for SpectralSum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let terms = Vec::<SpectralTerm>::deserialize(deserializer)?;
        Ok(Self::new(terms))
    }
}

impl fmt::Display for SpectralSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for t in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match t.d {
                0 => write!(f, "({})", t.p)?,
                1 => write!(f, "z*({})", t.p)?,
                _ => write!(f, "z^{}*({})", t.d, t.p)?,
            }
            match t.k {
                0 => write!(f, "/(1 - z)")?,
                1 => write!(f, "/(1 - z*q)")?,
                _ => write!(f, "/(1 - z*q^{})", t.k)?,
            }
        }
        Ok(())
    }
}

/// Exact division of `z`-polynomials with integer coefficients, performed
/// over the rationals. Returns `None` when the division leaves a remainder.
fn divide_z_polys(
    num: &BTreeMap<u32, num::BigInt>,
    den: &BTreeMap<u32, num::BigInt>,
) -> Option<BTreeMap<u32, ExactRational>> {
    assert!(!den.is_empty(), "divide_z_polys: zero denominator");
    let mut rem: BTreeMap<u32, ExactRational> = num
        .iter()
        .map(|(e, c)| (*e, ExactRational::from(c.clone())))
        .collect();
    let den: BTreeMap<u32, ExactRational> = den
        .iter()
        .map(|(e, c)| (*e, ExactRational::from(c.clone())))
        .collect();
    let (&den_deg, den_lead) = den.iter().next_back().expect("nonzero denominator");
    let mut quot: BTreeMap<u32, ExactRational> = BTreeMap::new();
    while let Some((&rem_deg, rem_lead)) = rem.iter().next_back() {
        if rem_deg < den_deg {
            return None;
        }
        let shift = rem_deg - den_deg;
        let coeff = rem_lead / den_lead;
        for (e, c) in &den {
            let e_shifted = e + shift;
            let delta = &coeff * c;
            let entry = rem.entry(e_shifted).or_insert_with(ExactRational::zero);
            *entry -= delta;
            if entry.is_zero() {
                rem.remove(&e_shifted);
            }
        }
        quot.insert(shift, coeff);
    }
    Some(quot)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::parse_rational;
    use num::bigint::BigInt;

    fn term(d: u32, k: i64, p: LaurentPoly) -> SpectralTerm {
        SpectralTerm { d, k, p }
    }

    fn poly(terms: &[(i64, i64)]) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(*e, &BigInt::from(*c));
        }
        p
    }

    #[test]
    fn normalization_merges_and_drops() {
        let s = SpectralSum::new(vec![
            term(1, 2, poly(&[(0, 1)])),
            term(1, 2, poly(&[(0, -1)])),
            term(0, 3, LaurentPoly::zero()),
        ]);
        assert!(s.is_zero());
        let t = SpectralSum::new(vec![
            term(2, 0, poly(&[(1, 1)])),
            term(0, 1, poly(&[(0, 1)])),
        ]);
        assert_eq!(t.terms().len(), 2);
        assert_eq!(t.terms()[0].d, 0); // sorted by (d, k)
    }

    #[test]
    fn fraction_of_two_series() {
        // 1/(1-z q) + 1/(1-z q^2)  =>  numerator (1-z q^2) + (1-z q).
        let s = SpectralSum::new(vec![
            term(0, 1, LaurentPoly::one()),
            term(0, 2, LaurentPoly::one()),
        ]);
        let (num, slopes) = s.to_fraction(&[]);
        assert_eq!(slopes, vec![1, 2]);
        let mut expected = BiPoly::monomial(0, 0, 2);
        expected.add_term(1, 1, &BigInt::from(-1));
        expected.add_term(2, 1, &BigInt::from(-1));
        assert_eq!(num, expected);
        // Extra slopes enlarge the denominator consistently.
        let (num3, slopes3) = s.to_fraction(&[5]);
        assert_eq!(slopes3, vec![1, 2, 5]);
        let q = parse_rational("1/3").unwrap();
        let z = parse_rational("1/7").unwrap();
        let mut den3 = ExactRational::one();
        for k in slopes3 {
            den3 *= ExactRational::one() - &z * rational_pow(&q, k).unwrap();
        }
        assert_eq!(num3.eval(&q, &z).unwrap() / den3, s.eval(&q, &z).unwrap());
    }

    #[test]
    fn eval_matches_fraction() {
        let s = SpectralSum::new(vec![
            term(1, -1, poly(&[(2, 1), (0, -1)])),
            term(0, 3, poly(&[(-1, 5)])),
        ]);
        let q = parse_rational("2/5").unwrap();
        let z = parse_rational("3/11").unwrap();
        let (num, slopes) = s.to_fraction(&[]);
        let mut den = ExactRational::one();
        for k in slopes {
            den *= ExactRational::one() - &z * rational_pow(&q, k).unwrap();
        }
        assert_eq!(s.eval(&q, &z).unwrap(), num.eval(&q, &z).unwrap() / den);
    }

    #[test]
    fn eval_reports_poles() {
        let s = SpectralSum::new(vec![term(0, 1, LaurentPoly::one())]);
        let q = parse_rational("1/2").unwrap();
        let z = parse_rational("2").unwrap();
        assert!(matches!(s.eval(&q, &z), Err(Error::PoleAtPoint(_))));
    }

    #[test]
    fn series_expansion() {
        // z^1 * q / (1 - z q^2): coefficients 0, q, q^3, q^5, ...
        let s = SpectralSum::new(vec![term(1, 2, poly(&[(1, 1)]))]);
        let coeffs = s.z_series(3);
        assert!(coeffs[0].is_zero());
        assert_eq!(coeffs[1], poly(&[(1, 1)]));
        assert_eq!(coeffs[2], poly(&[(3, 1)]));
        assert_eq!(coeffs[3], poly(&[(5, 1)]));
    }

    #[test]
    fn scaled_limit_monomial() {
        // q^2 z / (1 - z q): scaled by q^{-2} the q->0 limit is z.
        let s = SpectralSum::new(vec![term(1, 1, poly(&[(2, 1)]))]);
        assert_eq!(s.scaled_q0_limit(2, false).unwrap(), Q0Limit::Monomial(1));
        // Without enough scaling the limit vanishes.
        assert_eq!(s.scaled_q0_limit(1, false).unwrap(), Q0Limit::Zero);
        assert_eq!(s.scaled_q0_limit(0, false).unwrap(), Q0Limit::Zero);
        // Over-scaling diverges.
        assert!(matches!(s.scaled_q0_limit(3, false), Err(Error::LimitUndefined)));
    }

    #[test]
    fn scaled_limit_with_unit_pole() {
        // 1/(1 - z): multiplying by (1 - z) leaves the constant 1 = z^0.
        let s = SpectralSum::new(vec![term(0, 0, LaurentPoly::one())]);
        assert_eq!(s.scaled_q0_limit(0, true).unwrap(), Q0Limit::Monomial(0));
        // Same sum without the (1 - z) factor: leading z-polys are 1 and
        // (1 - z), whose ratio is not a polynomial.
        assert!(matches!(s.scaled_q0_limit(0, false), Err(Error::LimitUndefined)));
        // A sum with no slope-zero term gains the (1 - z) numerator factor:
        // (1 - z) q^0 z^2 / (1 - z q): limit is z^2 - z^3, not a monomial.
        let t = SpectralSum::new(vec![term(2, 1, LaurentPoly::one())]);
        assert!(matches!(t.scaled_q0_limit(0, true), Err(Error::LimitUndefined)));
    }

    #[test]
    fn cancellation_raises_valuation() {
        // q/(1-z q) - q/(1-z q^3) = z q^2 (1 - q^2) / ((1-z q)(1-z q^3)):
        // each term alone has q-valuation 1, but the constant parts cancel
        // and the combined fraction has numerator valuation 2.
        let s = SpectralSum::new(vec![
            term(0, 1, poly(&[(1, 1)])),
            term(0, 3, poly(&[(1, -1)])),
        ]);
        let (num, _) = s.to_fraction(&[]);
        assert_eq!(num.q_valuation(), Some(2));
        assert_eq!(s.scaled_q0_limit(1, false).unwrap(), Q0Limit::Zero);
        assert_eq!(s.scaled_q0_limit(2, false).unwrap(), Q0Limit::Monomial(1));
        assert!(matches!(s.scaled_q0_limit(3, false), Err(Error::LimitUndefined)));
    }

    #[test]
    fn z_poly_division() {
        // (1 - z^4) / (1 - z) = 1 + z + z^2 + z^3.
        let num: BTreeMap<u32, BigInt> =
            [(0u32, BigInt::from(1)), (4, BigInt::from(-1))].into_iter().collect();
        let den: BTreeMap<u32, BigInt> =
            [(0u32, BigInt::from(1)), (1, BigInt::from(-1))].into_iter().collect();
        let quot = divide_z_polys(&num, &den).unwrap();
        assert_eq!(quot.len(), 4);
        assert!(quot.values().all(|c| c.is_one()));
        // Remainders are detected.
        let num2: BTreeMap<u32, BigInt> =
            [(0u32, BigInt::from(1)), (2, BigInt::from(1))].into_iter().collect();
        assert!(divide_z_polys(&num2, &den).is_none());
    }

    #[test]
    fn serde_round_trip() {
        let s = SpectralSum::new(vec![
            term(1, -2, poly(&[(0, 1), (4, -3)])),
            term(0, 5, poly(&[(-1, 2)])),
        ]);
        let json = serde_json::to_string(&s).unwrap();
        let back: SpectralSum = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }
}
