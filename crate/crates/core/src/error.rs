//! Crate-wide error type.
//!
//! Every fallible operation in this crate reports one of the variants below.
//! The CLI maps them to exit codes: verification *mismatches* are reported
//! through report structs (not errors), while `Error` values always signal a
//! violated precondition or an impossible exact computation.

use thiserror::Error;

/// Errors produced by exact computations and their preconditions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A computation that must close to a Laurent polynomial (for example a
    /// generating-series coefficient extracted through a fraction field) left
    /// a nonzero remainder after exact division.
    #[error("result is not a polynomial: exact division left a remainder")]
    NonPolynomialResult,

    /// An exact evaluation point hits a pole of a rational expression.
    #[error("evaluation point hits a pole: {0}")]
    PoleAtPoint(String),

    /// The scaled q->0 limit does not exist, or exists but is not zero or a
    /// unit monomial in z.
    #[error("scaled q->0 limit is undefined or not a unit monomial in z")]
    LimitUndefined,

    /// The Fock-space cutoff is too small for the requested computation.
    #[error("Fock cutoff {cutoff} too small: need at least {needed}")]
    CutoffTooSmall { cutoff: usize, needed: usize },

    /// A parameter value makes the algebra degenerate, e.g. q in {0, 1, -1}
    /// or a vanishing spectral parameter.
    #[error("degenerate parameter: {0}")]
    DegenerateParameter(String),

    /// Vectors do not share a signature, or their lengths disagree with it.
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),

    /// Occupation numbers violate the signature constraints or another
    /// documented precondition.
    #[error("invalid state vector: {0}")]
    InvalidState(String),

    /// The border recursion of the piecewise-linear oracle failed to return
    /// to its fixed point, so the reported energy would be inconsistent.
    #[error("border recursion not at fixed point: c0({h}) = {c0} != {h}")]
    FixedPointViolation { h: u32, c0: u32 },

    /// A string could not be parsed as the requested exact value.
    #[error("parse error: {0}")]
    Parse(String),
}
