//! The `q = 0` combinatorial shadows of the three-dimensional operators.
//!
//! At `q = 0` every column of the bosonic and fermionic operators collapses
//! to a single basis state with coefficient one, so each operator becomes a
//! set-theoretic map on occupation triples. Those maps satisfy the
//! tetrahedron equations verbatim, now as equalities of composed functions,
//! which [`verify_combinatorial_te`] checks by exhaustive sweep and
//! [`comb_te_trace`] exposes step by step.

use serde::Serialize;

use crate::error::Error;
use crate::threed::elems::LayerKind;

/// Which tetrahedron equation family to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TeFamily {
    /// All four factors bosonic.
    Rrrr,
    /// One bosonic factor on the Fock legs, three fermionic factors.
    Rlll,
}

/// The `q = 0` limit of the bosonic operator:
/// `(i, j, k) -> (j + (i-k)+, min(i, k), j + (k-i)+)`.
pub fn q0_r_map(i: u32, j: u32, k: u32) -> (u32, u32, u32) {
    (j + i.saturating_sub(k), i.min(k), j + k.saturating_sub(i))
}

/// The `q = 0` limit of the fermionic operator:
/// `(i, j, k) -> (j + (i-j-k)+, min(i, j+k), (j+k-i)+)` with `i, j <= 1`.
///
/// # Panics
///
/// Panics when a spin entry exceeds 1.
pub fn q0_l_map(i: u32, j: u32, k: u32) -> (u32, u32, u32) {
    assert!(i <= 1 && j <= 1, "q0_l_map: spin legs must hold 0 or 1");
    (
        j + i.saturating_sub(j + k),
        i.min(j + k),
        (j + k).saturating_sub(i),
    )
}

/// Dispatches to [`q0_r_map`] or [`q0_l_map`] by layer kind.
pub fn q0_layer_map(kind: LayerKind, i: u32, j: u32, k: u32) -> (u32, u32, u32) {
    match kind {
        LayerKind::Bosonic => q0_r_map(i, j, k),
        LayerKind::Fermionic => q0_l_map(i, j, k),
    }
}

fn apply_map(state: &mut [u32; 6], legs: [usize; 3], kind: LayerKind) {
    let (i, j, k) = (state[legs[0]], state[legs[1]], state[legs[2]]);
    let (a, b, c) = q0_layer_map(kind, i, j, k);
    state[legs[0]] = a;
    state[legs[1]] = b;
    state[legs[2]] = c;
}

fn word(family: TeFamily) -> [([usize; 3], LayerKind); 4] {
    use LayerKind::{Bosonic, Fermionic};
    match family {
        TeFamily::Rrrr => [
            ([3, 4, 5], Bosonic),
            ([1, 2, 5], Bosonic),
            ([0, 2, 4], Bosonic),
            ([0, 1, 3], Bosonic),
        ],
        TeFamily::Rlll => [
            ([3, 4, 5], Bosonic),
            ([1, 2, 5], Fermionic),
            ([0, 2, 4], Fermionic),
            ([0, 1, 3], Fermionic),
        ],
    }
}

/// The same factors in the opposite product order.
fn word_reversed(family: TeFamily) -> [([usize; 3], LayerKind); 4] {
    let mut w = word(family);
    w.reverse();
    w
}

/// The state sequences produced by applying both sides of a combinatorial
/// tetrahedron equation to one input, starting state included (five states
/// per side).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CombTeTrace {
    /// States visited by the left-hand side, in application order.
    pub lhs: Vec<[u32; 6]>,
    /// States visited by the right-hand side, in application order.
    pub rhs: Vec<[u32; 6]>,
}

impl CombTeTrace {
    /// True when both sides end in the same state.
    pub fn agrees(&self) -> bool {
        self.lhs.last() == self.rhs.last()
    }
}

/// Applies both sides of the chosen equation to `input`, recording every
/// intermediate state.
///
/// # Errors
///
/// Returns [`Error::InvalidState`] for the mixed family when a spin leg
/// holds more than 1.
pub fn comb_te_trace(family: TeFamily, input: [u32; 6]) -> Result<CombTeTrace, Error> {
    if family == TeFamily::Rlll {
        if let Some(bad) = input[..3].iter().find(|&&s| s > 1) {
            return Err(Error::InvalidState(format!(
                "spin legs must hold 0 or 1, got {bad}"
            )));
        }
    }
    let run = |factors: [([usize; 3], LayerKind); 4]| -> Vec<[u32; 6]> {
        let mut state = input;
        let mut states = vec![state];
        for (legs, kind) in factors {
            apply_map(&mut state, legs, kind);
            states.push(state);
        }
        states
    };
    Ok(CombTeTrace { lhs: run(word(family)), rhs: run(word_reversed(family)) })
}

/// One input on which the two sides of a combinatorial tetrahedron equation
/// disagree.
#[derive(Debug, Clone, Serialize)]
pub struct CombTeFailure {
    /// The offending input.
    pub input: [u32; 6],
    /// Final state of the left-hand side.
    pub lhs: [u32; 6],
    /// Final state of the right-hand side.
    pub rhs: [u32; 6],
}

/// Result of sweeping a combinatorial tetrahedron equation.
#[derive(Debug, Clone, Serialize)]
pub struct CombTeReport {
    /// Which family was swept.
    pub family: TeFamily,
    /// Per-leg occupation bound of the sweep.
    pub bound: u32,
    /// Number of inputs checked.
    pub inputs_checked: u64,
    /// True when every input agreed.
    pub pass: bool,
    /// Up to eight disagreeing inputs.
    pub failures: Vec<CombTeFailure>,
}

const MAX_REPORTED_FAILURES: usize = 8;

/// Sweeps every input with each leg occupation at most `bound` (spin legs
/// capped at 1 for the mixed family) and compares the two composed maps.
pub fn verify_combinatorial_te(family: TeFamily, bound: u32) -> CombTeReport {
    let leg_bound = |leg: usize| -> u32 {
        match family {
            TeFamily::Rrrr => bound,
            TeFamily::Rlll => {
                if leg < 3 {
                    bound.min(1)
                } else {
                    bound
                }
            }
        }
    };
    let mut inputs_checked = 0u64;
    let mut failures = Vec::new();
    let mut input = [0u32; 6];
    loop {
        inputs_checked += 1;
        let trace = comb_te_trace(family, input).expect("legs are within bounds by construction");
        if !trace.agrees() && failures.len() < MAX_REPORTED_FAILURES {
            failures.push(CombTeFailure {
                input,
                lhs: *trace.lhs.last().expect("trace has five states"),
                rhs: *trace.rhs.last().expect("trace has five states"),
            });
        }
        // Odometer increment over the box of allowed occupations.
        let mut pos = 0;
        loop {
            if pos == 6 {
                let pass = failures.is_empty();
                return CombTeReport { family, bound, inputs_checked, pass, failures };
            }
            if input[pos] < leg_bound(pos) {
                input[pos] += 1;
                break;
            }
            input[pos] = 0;
            pos += 1;
        }
    }
}
