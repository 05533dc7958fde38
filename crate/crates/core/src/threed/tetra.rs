//! Machine verification of the tetrahedron equations.
//!
//! Both sides of a tetrahedron equation are expanded against a concrete
//! basis input: a state is a tuple of occupation numbers for the six legs,
//! and applying an operator at legs `(p, q, r)` replaces each basis state by
//! the finite combination its column produces. Conservation (`a + b` and
//! `b + c` preserved) makes every column finite, so the expansion is exact.
//!
//! Products are applied right to left, matching operator composition: in
//! `R_124 R_135 R_236 R_456 |state>`, the `456` factor acts first.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::Error;
use crate::laurent::LaurentPoly;
use crate::threed::elems::{l_elem, r_elem};
use crate::types::{EpsSignature, StateVector};

/// A linear combination of leg-occupation states with Laurent coefficients.
pub(crate) type Amplitudes = HashMap<Vec<u32>, LaurentPoly>;

/// One disagreeing state in a failed tetrahedron-equation check.
#[derive(Debug, Clone, Serialize)]
pub struct TeMismatch {
    /// The six (or `3n + 3`) leg occupations of the disagreeing state.
    pub state: Vec<u32>,
    /// Coefficient produced by the left-hand side.
    pub lhs: LaurentPoly,
    /// Coefficient produced by the right-hand side.
    pub rhs: LaurentPoly,
}

/// Result of comparing both sides of a tetrahedron equation on one input.
#[derive(Debug, Clone, Serialize)]
pub struct TeReport {
    /// The input state.
    pub input: Vec<u32>,
    /// True when both sides agree on every output state.
    pub equal: bool,
    /// Number of states with nonzero coefficient on the left.
    pub lhs_states: usize,
    /// Number of states with nonzero coefficient on the right.
    pub rhs_states: usize,
    /// Number of distinct output states compared.
    pub states_compared: usize,
    /// Up to eight disagreeing states (empty when `equal`).
    pub mismatches: Vec<TeMismatch>,
}

const MAX_REPORTED_MISMATCHES: usize = 8;

/// Applies a three-leg operator with matrix element `elem` at the given leg
/// positions of every state in `states`.
///
/// For each input triple `(i, j, k)` the output triples are exactly
/// `(a, b, c) = (i + j - b, b, j + k - b)` for `b` in `0..=min(i+j, j+k)`;
/// the element function decides which of those actually contribute.
pub(crate) fn apply_three_leg<F>(states: &Amplitudes, legs: [usize; 3], elem: &F) -> Amplitudes
where
    F: Fn(u32, u32, u32, u32, u32, u32) -> LaurentPoly,
{
    let mut out: Amplitudes = HashMap::new();
    for (state, coeff) in states {
        let (i, j, k) = (state[legs[0]], state[legs[1]], state[legs[2]]);
        for b in 0..=(i + j).min(j + k) {
            let a = i + j - b;
            let c = j + k - b;
            let el = elem(a, b, c, i, j, k);
            if el.is_zero() {
                continue;
            }
            let mut next = state.clone();
            next[legs[0]] = a;
            next[legs[1]] = b;
            next[legs[2]] = c;
            let entry = out.entry(next).or_default();
            *entry += &(coeff * &el);
        }
    }
    out.retain(|_, p| !p.is_zero());
    out
}

/// Expands an operator word against a single basis input. `word` lists the
/// factors in application order (rightmost factor of the product first).
fn expand_word(input: &[u32], word: &[([usize; 3], Elem)]) -> Amplitudes {
    let mut states: Amplitudes = HashMap::new();
    states.insert(input.to_vec(), LaurentPoly::one());
    for (legs, elem) in word {
        states = apply_three_leg(&states, *legs, elem);
    }
    states
}

/// Compares two expansions state by state.
fn compare(input: &[u32], lhs: Amplitudes, rhs: Amplitudes) -> TeReport {
    let lhs_states = lhs.len();
    let rhs_states = rhs.len();
    let mut keys: Vec<&Vec<u32>> = lhs.keys().chain(rhs.keys()).collect();
    keys.sort();
    keys.dedup();
    let states_compared = keys.len();
    let zero = LaurentPoly::zero();
    let mut mismatches = Vec::new();
    for key in keys {
        let l = lhs.get(key).unwrap_or(&zero);
        let r = rhs.get(key).unwrap_or(&zero);
        if l != r && mismatches.len() < MAX_REPORTED_MISMATCHES {
            mismatches.push(TeMismatch { state: key.clone(), lhs: l.clone(), rhs: r.clone() });
        }
    }
    TeReport {
        input: input.to_vec(),
        equal: mismatches.is_empty(),
        lhs_states,
        rhs_states,
        states_compared,
        mismatches,
    }
}

type Elem = fn(u32, u32, u32, u32, u32, u32) -> LaurentPoly;

/// Verifies the all-bosonic tetrahedron equation
/// `R_124 R_135 R_236 R_456 = R_456 R_236 R_135 R_124`
/// on one six-leg input.
pub fn verify_te_rrrr(input: [u32; 6]) -> TeReport {
    let r: Elem = r_elem;
    let lhs: Vec<([usize; 3], Elem)> = vec![
        ([3, 4, 5], r),
        ([1, 2, 5], r),
        ([0, 2, 4], r),
        ([0, 1, 3], r),
    ];
    let rhs: Vec<([usize; 3], Elem)> = vec![
        ([0, 1, 3], r),
        ([0, 2, 4], r),
        ([1, 2, 5], r),
        ([3, 4, 5], r),
    ];
    compare(&input, expand_word(&input, &lhs), expand_word(&input, &rhs))
}

/// Verifies the mixed tetrahedron equation
/// `L_124 L_135 L_236 R_456 = R_456 L_236 L_135 L_124`
/// on one input whose first three legs are two-dimensional.
///
/// # Errors
///
/// Returns [`Error::InvalidState`] when a spin leg holds more than 1.
pub fn verify_te_rlll(spins: [u32; 3], fock: [u32; 3]) -> Result<TeReport, Error> {
    if let Some(bad) = spins.iter().find(|&&s| s > 1) {
        return Err(Error::InvalidState(format!(
            "spin legs must hold 0 or 1, got {bad}"
        )));
    }
    let input = [spins[0], spins[1], spins[2], fock[0], fock[1], fock[2]];
    let l: Elem = l_elem;
    let r: Elem = r_elem;
    let lhs: Vec<([usize; 3], Elem)> = vec![
        ([3, 4, 5], r),
        ([1, 2, 5], l),
        ([0, 2, 4], l),
        ([0, 1, 3], l),
    ];
    let rhs: Vec<([usize; 3], Elem)> = vec![
        ([0, 1, 3], l),
        ([0, 2, 4], l),
        ([1, 2, 5], l),
        ([3, 4, 5], r),
    ];
    Ok(compare(&input, expand_word(&input, &lhs), expand_word(&input, &rhs)))
}

/// Verifies the `n`-layer mixed tetrahedron equation selected by a
/// signature: with `S^(t)` the bosonic or fermionic operator according to
/// slot `t`,
///
/// ```text
///   (S_{a1 b1 4} S_{a1 c1 5} S_{b1 c1 6}) ... (S_{an bn 4} S_{an cn 5} S_{bn cn 6}) R_456
///     = R_456 (S_{b1 c1 6} S_{a1 c1 5} S_{a1 b1 4}) ... (S_{bn cn 6} S_{an cn 5} S_{an bn 4})
/// ```
///
/// on one input. The state layout is
/// `[alpha_1..alpha_n, beta_1..beta_n, gamma_1..gamma_n, f4, f5, f6]`.
///
/// # Errors
///
/// Returns [`Error::SignatureMismatch`] when the three words do not all
/// have one slot per signature entry, and [`Error::InvalidState`] when a
/// fermionic slot holds more than 1.
pub fn verify_te_nlayer(
    eps: &EpsSignature,
    alpha: &StateVector,
    beta: &StateVector,
    gamma: &StateVector,
    fock: [u32; 3],
) -> Result<TeReport, Error> {
    let n = eps.len();
    for word in [alpha, beta, gamma] {
        word.check_admissible(eps)?;
    }
    let mut input = Vec::with_capacity(3 * n + 3);
    input.extend_from_slice(alpha.entries());
    input.extend_from_slice(beta.entries());
    input.extend_from_slice(gamma.entries());
    input.extend_from_slice(&fock);
    let (leg4, leg5, leg6) = (3 * n, 3 * n + 1, 3 * n + 2);
    let r: Elem = r_elem;

    let mut lhs: Vec<([usize; 3], Elem)> = vec![([leg4, leg5, leg6], r)];
    for t in (0..n).rev() {
        let s: Elem = if eps.is_fermionic(t) { l_elem } else { r_elem };
        lhs.push(([n + t, 2 * n + t, leg6], s));
        lhs.push(([t, 2 * n + t, leg5], s));
        lhs.push(([t, n + t, leg4], s));
    }
    let mut rhs: Vec<([usize; 3], Elem)> = Vec::new();
    for t in (0..n).rev() {
        let s: Elem = if eps.is_fermionic(t) { l_elem } else { r_elem };
        rhs.push(([t, n + t, leg4], s));
        rhs.push(([t, 2 * n + t, leg5], s));
        rhs.push(([n + t, 2 * n + t, leg6], s));
    }
    rhs.push(([leg4, leg5, leg6], r));

    Ok(compare(&input, expand_word(&input, &lhs), expand_word(&input, &rhs)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rrrr_small_inputs() {
        for input in [
            [0, 0, 0, 0, 0, 0],
            [1, 0, 0, 0, 0, 0],
            [0, 1, 0, 1, 0, 1],
            [1, 1, 1, 0, 0, 0],
            [2, 1, 0, 1, 0, 2],
            [1, 2, 1, 1, 1, 1],
        ] {
            let report = verify_te_rrrr(input);
            assert!(report.equal, "tetrahedron equation failed on {input:?}: {:?}", report.mismatches);
            assert!(report.states_compared > 0);
        }
    }

    #[test]
    fn rlll_small_inputs() {
        for spins in [[0, 0, 0], [1, 0, 1], [1, 1, 1], [0, 1, 0]] {
            for fock in [[0, 0, 0], [1, 0, 2], [2, 1, 0]] {
                let report = verify_te_rlll(spins, fock).unwrap();
                assert!(
                    report.equal,
                    "mixed tetrahedron equation failed on {spins:?} {fock:?}: {:?}",
                    report.mismatches
                );
            }
        }
        assert!(verify_te_rlll([2, 0, 0], [0, 0, 0]).is_err());
    }

    #[test]
    fn single_layer_signatures_reduce_to_plain_equations() {
        // eps = "0" is the all-bosonic equation, eps = "1" the mixed one.
        let eps0 = EpsSignature::parse("0").unwrap();
        let report = verify_te_nlayer(
            &eps0,
            &StateVector::new(vec![2]),
            &StateVector::new(vec![1]),
            &StateVector::new(vec![0]),
            [1, 0, 2],
        )
        .unwrap();
        assert!(report.equal, "{:?}", report.mismatches);
        let eps1 = EpsSignature::parse("1").unwrap();
        let report = verify_te_nlayer(
            &eps1,
            &StateVector::new(vec![1]),
            &StateVector::new(vec![0]),
            &StateVector::new(vec![1]),
            [0, 2, 1],
        )
        .unwrap();
        assert!(report.equal, "{:?}", report.mismatches);
        // Fermionic slots cap occupation.
        assert!(verify_te_nlayer(
            &eps1,
            &StateVector::new(vec![2]),
            &StateVector::new(vec![0]),
            &StateVector::new(vec![0]),
            [0, 0, 0],
        )
        .is_err());
    }

    #[test]
    fn two_layer_mixed_signature() {
        let eps = EpsSignature::parse("10").unwrap();
        let report = verify_te_nlayer(
            &eps,
            &StateVector::new(vec![1, 1]),
            &StateVector::new(vec![0, 1]),
            &StateVector::new(vec![1, 0]),
            [1, 1, 0],
        )
        .unwrap();
        assert!(report.equal, "{:?}", report.mismatches);
    }

    #[test]
    fn mutated_element_breaks_the_equation() {
        // Negative control: an operator with one perturbed matrix element
        // cannot satisfy the tetrahedron identity on every small input, so
        // the verifier must flag at least one of them.
        fn bad_r(a: u32, b: u32, c: u32, i: u32, j: u32, k: u32) -> LaurentPoly {
            let mut v = r_elem(a, b, c, i, j, k);
            if (a, b, c, i, j, k) == (1, 0, 1, 1, 0, 1) {
                v += &LaurentPoly::q_power(5);
            }
            v
        }
        let bad: Elem = bad_r;
        let legs_lhs = [[3, 4, 5], [1, 2, 5], [0, 2, 4], [0, 1, 3]];
        let legs_rhs = [[0, 1, 3], [0, 2, 4], [1, 2, 5], [3, 4, 5]];
        let word = |legs: &[[usize; 3]; 4]| -> Vec<([usize; 3], Elem)> {
            legs.iter().map(|&l| (l, bad)).collect()
        };
        let mut any_broken = false;
        'outer: for total in 0..=2u32 {
            for input in compositions(total) {
                let lhs = expand_word(&input, &word(&legs_lhs));
                let rhs = expand_word(&input, &word(&legs_rhs));
                if !compare(&input, lhs, rhs).equal {
                    any_broken = true;
                    break 'outer;
                }
            }
        }
        assert!(any_broken, "mutation went undetected on all small inputs");
    }

    /// All six-leg inputs with the given total occupation.
    fn compositions(total: u32) -> Vec<[u32; 6]> {
        let mut out = Vec::new();
        let mut cur = [0u32; 6];
        fn rec(pos: usize, left: u32, cur: &mut [u32; 6], out: &mut Vec<[u32; 6]>) {
            if pos == 5 {
                cur[5] = left;
                out.push(*cur);
                return;
            }
            for v in 0..=left {
                cur[pos] = v;
                rec(pos + 1, left - v, cur, out);
            }
        }
        rec(0, total, &mut cur, &mut out);
        out
    }
}
