//! Truncated q-oscillator matrices on Fock space.
//!
//! The q-oscillator acts on the number basis `|0>, |1>, |2>, ...` by
//!
//! ```text
//!   a+ |m> = |m+1>        a- |m> = (1 - q^{2m}) |m-1>
//!   k  |m> = q^m |m>      h  |m> = m |m>
//! ```
//!
//! Matrices here are truncated to a finite `cutoff` (states `0..cutoff`).
//! Truncation is faithful on columns `0..=cutoff-2`: any product of the
//! generators evaluated against those columns agrees with the untruncated
//! action, because a single application can raise the state by at most one.
//! [`check_osc_relations`] verifies the defining relations on that window,
//! and [`ropp_operator`] builds the oscillator-valued entries of the
//! three-dimensional solitonic operator.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::laurent::{q_binomial, LaurentPoly};
use crate::report::{all_pass, RelationCheck};

/// The four q-oscillator generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OscGenerator {
    /// Creation operator `a+`.
    APlus,
    /// Annihilation operator `a-`.
    AMinus,
    /// Grading operator `k = q^h`.
    K,
    /// Number operator `h`.
    H,
}

impl OscGenerator {
    /// Parses the names used on the command line: `a+`, `a-`, `k`, `h`.
    ///
    /// # Errors
    ///
    /// Returns [`Error::Parse`] for anything else.
    pub fn parse(s: &str) -> Result<Self, Error> {
        match s {
            "a+" | "aplus" => Ok(Self::APlus),
            "a-" | "aminus" => Ok(Self::AMinus),
            "k" => Ok(Self::K),
            "h" => Ok(Self::H),
            other => Err(Error::Parse(format!(
                "unknown oscillator generator {other:?} (expected a+, a-, k, h)"
            ))),
        }
    }
}

/// A dense `cutoff x cutoff` matrix of Laurent polynomials acting on the
/// truncated Fock space. Row and column indices are occupation numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FockMatrix {
    cutoff: usize,
    data: Vec<LaurentPoly>,
}

impl FockMatrix {
    /// The zero matrix.
    pub fn zero(cutoff: usize) -> Self {
        assert!(cutoff > 0, "FockMatrix: cutoff must be positive");
        Self { cutoff, data: vec![LaurentPoly::zero(); cutoff * cutoff] }
    }

    /// The identity matrix.
    pub fn identity(cutoff: usize) -> Self {
        let mut m = Self::zero(cutoff);
        for i in 0..cutoff {
            *m.entry_mut(i, i) = LaurentPoly::one();
        }
        m
    }

    /// The truncation size (number of retained states).
    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// The entry `<row| M |col>`.
    ///
    /// # Panics
    ///
    /// Panics when an index reaches the cutoff.
    pub fn entry(&self, row: usize, col: usize) -> &LaurentPoly {
        assert!(row < self.cutoff && col < self.cutoff, "Fock index out of range");
        &self.data[row * self.cutoff + col]
    }

    /// Mutable access to an entry.
    ///
    /// # Panics
    ///
    /// Panics when an index reaches the cutoff.
    pub fn entry_mut(&mut self, row: usize, col: usize) -> &mut LaurentPoly {
        assert!(row < self.cutoff && col < self.cutoff, "Fock index out of range");
        &mut self.data[row * self.cutoff + col]
    }

    /// Matrix product.
    ///
    /// # Panics
    ///
    /// Panics when the cutoffs disagree.
    pub fn mul(&self, rhs: &FockMatrix) -> FockMatrix {
        assert_eq!(self.cutoff, rhs.cutoff, "FockMatrix product cutoff mismatch");
        let n = self.cutoff;
        let mut out = FockMatrix::zero(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.entry(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let b = rhs.entry(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    *out.entry_mut(r, c) += &(a * b);
                }
            }
        }
        out
    }

    /// Entrywise sum.
    ///
    /// # Panics
    ///
    /// Panics when the cutoffs disagree.
    pub fn add(&self, rhs: &FockMatrix) -> FockMatrix {
        assert_eq!(self.cutoff, rhs.cutoff, "FockMatrix sum cutoff mismatch");
        let mut out = self.clone();
        for (o, r) in out.data.iter_mut().zip(&rhs.data) {
            *o += r;
        }
        out
    }

    /// Entrywise difference.
    ///
    /// # Panics
    ///
    /// Panics when the cutoffs disagree.
    pub fn sub(&self, rhs: &FockMatrix) -> FockMatrix {
        assert_eq!(self.cutoff, rhs.cutoff, "FockMatrix difference cutoff mismatch");
        let mut out = self.clone();
        for (o, r) in out.data.iter_mut().zip(&rhs.data) {
            *o -= r;
        }
        out
    }

    /// Multiplies every entry by a Laurent polynomial.
    pub fn scale(&self, p: &LaurentPoly) -> FockMatrix {
        let mut out = self.clone();
        for o in out.data.iter_mut() {
            *o = &*o * p;
        }
        out
    }

    /// The `n`-th power (`n = 0` gives the identity).
    pub fn pow(&self, n: u32) -> FockMatrix {
        let mut out = FockMatrix::identity(self.cutoff);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// True when the matrices agree on every column in `0..=max_col`.
    ///
    /// # Panics
    ///
    /// Panics when the cutoffs disagree or `max_col` reaches the cutoff.
    pub fn equal_on_columns(&self, rhs: &FockMatrix, max_col: usize) -> bool {
        assert_eq!(self.cutoff, rhs.cutoff, "FockMatrix comparison cutoff mismatch");
        assert!(max_col < self.cutoff, "column window exceeds cutoff");
        for c in 0..=max_col {
            for r in 0..self.cutoff {
                if self.entry(r, c) != rhs.entry(r, c) {
                    return false;
                }
            }
        }
        true
    }
}

/// The matrix of one generator on the truncated Fock space.
pub fn generator_matrix(g: OscGenerator, cutoff: usize) -> FockMatrix {
    let mut m = FockMatrix::zero(cutoff);
    match g {
        OscGenerator::APlus => {
            for s in 0..cutoff.saturating_sub(1) {
                *m.entry_mut(s + 1, s) = LaurentPoly::one();
            }
        }
        OscGenerator::AMinus => {
            for s in 1..cutoff {
                *m.entry_mut(s - 1, s) =
                    &LaurentPoly::one() - &LaurentPoly::q_power(2 * s as i64);
            }
        }
        OscGenerator::K => {
            for s in 0..cutoff {
                *m.entry_mut(s, s) = LaurentPoly::q_power(s as i64);
            }
        }
        OscGenerator::H => {
            for s in 0..cutoff {
                *m.entry_mut(s, s) = LaurentPoly::constant(s as i64);
            }
        }
    }
    m
}

/// Result of checking the q-oscillator defining relations at a cutoff.
#[derive(Debug, Clone, Serialize)]
pub struct OscReport {
    /// Truncation size used.
    pub cutoff: usize,
    /// Largest column (occupation number) on which products were compared.
    pub max_checked_state: usize,
    /// Per-relation outcomes.
    pub checks: Vec<RelationCheck>,
}

impl OscReport {
    /// True when every relation held on the window.
    pub fn passed(&self) -> bool {
        all_pass(&self.checks)
    }
}

/// Verifies the defining relations
/// `k a+ = q a+ k`, `k a- = q^{-1} a- k`, `a+ a- = 1 - k^2`,
/// `a- a+ = 1 - q^2 k^2`, and `[h, a+] = a+`, `[h, a-] = -a-`
/// on the faithful window of the truncated Fock space.
///
/// # Errors
///
/// Returns [`Error::CutoffTooSmall`] when `cutoff < 3`, which would leave no
/// nontrivial window.
pub fn check_osc_relations(cutoff: usize) -> Result<OscReport, Error> {
    if cutoff < 3 {
        return Err(Error::CutoffTooSmall { cutoff, needed: 3 });
    }
    let max_col = cutoff - 2;
    let aplus = generator_matrix(OscGenerator::APlus, cutoff);
    let aminus = generator_matrix(OscGenerator::AMinus, cutoff);
    let k = generator_matrix(OscGenerator::K, cutoff);
    let h = generator_matrix(OscGenerator::H, cutoff);
    let one = FockMatrix::identity(cutoff);
    let q = LaurentPoly::q_power(1);
    let q_inv = LaurentPoly::q_power(-1);
    let q2 = LaurentPoly::q_power(2);

    let window_cases = (max_col as u64 + 1) * cutoff as u64;
    let mut checks = Vec::new();
    let mut push = |name: &str, lhs: &FockMatrix, rhs: &FockMatrix| {
        if lhs.equal_on_columns(rhs, max_col) {
            checks.push(RelationCheck::passed(name, window_cases));
        } else {
            let (r, c) = first_entry_mismatch(lhs, rhs, max_col);
            checks.push(RelationCheck::failed(
                name,
                window_cases,
                format!("entry ({r},{c}): {} != {}", lhs.entry(r, c), rhs.entry(r, c)),
            ));
        }
    };

    push("k a+ = q a+ k", &k.mul(&aplus), &aplus.mul(&k).scale(&q));
    push("k a- = q^-1 a- k", &k.mul(&aminus), &aminus.mul(&k).scale(&q_inv));
    push("a+ a- = 1 - k^2", &aplus.mul(&aminus), &one.sub(&k.mul(&k)));
    push("a- a+ = 1 - q^2 k^2", &aminus.mul(&aplus), &one.sub(&k.mul(&k).scale(&q2)));
    push("h a+ - a+ h = a+", &h.mul(&aplus).sub(&aplus.mul(&h)), &aplus);
    push("h a- - a- h = -a-", &h.mul(&aminus).sub(&aminus.mul(&h)), &aminus.scale(&LaurentPoly::constant(-1)));

    Ok(OscReport { cutoff, max_checked_state: max_col, checks })
}

fn first_entry_mismatch(lhs: &FockMatrix, rhs: &FockMatrix, max_col: usize) -> (usize, usize) {
    for c in 0..=max_col {
        for r in 0..lhs.cutoff() {
            if lhs.entry(r, c) != rhs.entry(r, c) {
                return (r, c);
            }
        }
    }
    unreachable!("first_entry_mismatch called on equal matrices")
}

/// The oscillator-valued entry `R^{a,b}_{i,j}` of the three-dimensional
/// solitonic operator, acting on the third (Fock) leg:
///
/// ```text
///   R^{a,b}_{i,j} = delta_{a+b,i+j} sum_{lam+mu=b, mu<=i, lam<=j}
///       (-1)^lam q^{lam + mu^2 - i b}
///       binom(i,mu)_{q^2} binom(j,lam)_{q^2}
///       (a-)^mu (a+)^{j-lam} k^{i+lam-mu}
/// ```
///
/// truncated to the given cutoff. Like any generator polynomial, the result
/// is faithful on columns `0..=cutoff-1-j` (each `a+` raises by one).
pub fn ropp_operator(a: u32, b: u32, i: u32, j: u32, cutoff: usize) -> FockMatrix {
    let mut out = FockMatrix::zero(cutoff);
    if a + b != i + j {
        return out;
    }
    let aplus = generator_matrix(OscGenerator::APlus, cutoff);
    let aminus = generator_matrix(OscGenerator::AMinus, cutoff);
    let k = generator_matrix(OscGenerator::K, cutoff);
    for mu in 0..=b.min(i) {
        let lam = b - mu;
        if lam > j {
            continue;
        }
        let exp = i64::from(lam) + i64::from(mu) * i64::from(mu) - i64::from(i) * i64::from(b);
        let mut coeff = LaurentPoly::q_power(exp);
        if lam % 2 == 1 {
            coeff = -coeff;
        }
        coeff = &coeff * &q_binomial(u64::from(i), i64::from(mu), 2);
        coeff = &coeff * &q_binomial(u64::from(j), i64::from(lam), 2);
        let word = aminus.pow(mu).mul(&aplus.pow(j - lam)).mul(&k.pow(i + lam - mu));
        out = out.add(&word.scale(&coeff));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_actions() {
        let n = 5;
        let ap = generator_matrix(OscGenerator::APlus, n);
        let am = generator_matrix(OscGenerator::AMinus, n);
        let k = generator_matrix(OscGenerator::K, n);
        let h = generator_matrix(OscGenerator::H, n);
        // a+|2> = |3>, a-|2> = (1-q^4)|1>, k|2> = q^2|2>, h|2> = 2|2>.
        assert_eq!(*ap.entry(3, 2), LaurentPoly::one());
        assert!(ap.entry(2, 2).is_zero());
        let mut expect = LaurentPoly::one();
        expect -= &LaurentPoly::q_power(4);
        assert_eq!(*am.entry(1, 2), expect);
        assert_eq!(*k.entry(2, 2), LaurentPoly::q_power(2));
        assert_eq!(*h.entry(2, 2), LaurentPoly::constant(2));
        // a-|0> = 0.
        for r in 0..n {
            assert!(am.entry(r, 0).is_zero());
        }
    }

    #[test]
    fn relations_hold_and_window_is_sharp() {
        let report = check_osc_relations(6).unwrap();
        assert!(report.passed(), "{:?}", report.checks);
        assert_eq!(report.max_checked_state, 4);
        // At the last column the truncation genuinely breaks a- a+: the
        // faithful window cannot be extended.
        let n = 6;
        let am = generator_matrix(OscGenerator::AMinus, n);
        let ap = generator_matrix(OscGenerator::APlus, n);
        let k = generator_matrix(OscGenerator::K, n);
        let rhs = FockMatrix::identity(n)
            .sub(&k.mul(&k).scale(&LaurentPoly::q_power(2)));
        assert!(!am.mul(&ap).equal_on_columns(&rhs, n - 1));
    }

    #[test]
    fn cutoff_guard() {
        assert_eq!(
            check_osc_relations(2).map(|_| ()),
            Err(Error::CutoffTooSmall { cutoff: 2, needed: 3 })
        );
    }

    #[test]
    fn pow_and_identity() {
        let n = 4;
        let ap = generator_matrix(OscGenerator::APlus, n);
        assert_eq!(ap.pow(0), FockMatrix::identity(n));
        assert_eq!(ap.pow(2), ap.mul(&ap));
        // (a+)^n truncates to zero.
        assert_eq!(ap.pow(4), FockMatrix::zero(n));
    }

    #[test]
    fn generator_names() {
        assert_eq!(OscGenerator::parse("a+").unwrap(), OscGenerator::APlus);
        assert_eq!(OscGenerator::parse("aminus").unwrap(), OscGenerator::AMinus);
        assert!(OscGenerator::parse("b").is_err());
    }

    #[test]
    fn ropp_respects_conservation() {
        // a + b != i + j gives the zero operator.
        assert_eq!(ropp_operator(1, 1, 3, 0, 5), FockMatrix::zero(5));
    }
}
