//! Exact arithmetic for tetrahedron-equation operators, their matrix-product
//! Yang-Baxter descendants, and the combinatorial maps arising at `q = 0`.
//!
//! Everything is verified as an exact identity: scalars are
//! arbitrary-precision integers and rationals, polynomial identities are
//! compared coefficient by coefficient, and spectral-parameter dependence is
//! kept symbolic through [`SpectralSum`]. No floating point appears anywhere.
//!
//! The crate is organized in layers:
//!
//! - [`laurent`], [`bipoly`], [`qxpoly`], [`spectral`], [`rational`],
//!   [`matrix`]: exact scalar and polynomial arithmetic.
//! - [`oscillator`]: truncated q-oscillator matrices acting on Fock space.
//! - [`threed`]: the three-dimensional solitonic operators, the tetrahedron
//!   equations they satisfy, their `q = 0` combinatorial shadows, and
//!   structural properties.
//! - [`smatrix`]: matrix-product Yang-Baxter operators obtained by tracing
//!   layered three-dimensional operators against a spectral parameter.
//! - [`qgroup`]: quantum-superalgebra generators, defining relations, and
//!   the intertwining property of the traced operators.
//! - [`crystal`]: level-`l` occupation bases, the combinatorial R map with
//!   its energy statistic, and the set-theoretic Yang-Baxter property.

pub mod bipoly;
pub mod crystal;
pub mod error;
pub mod laurent;
pub mod matrix;
pub mod oscillator;
pub mod qgroup;
pub mod qxpoly;
pub mod rational;
pub mod report;
pub mod smatrix;
pub mod spectral;
pub mod threed;
pub mod types;

pub use bipoly::BiPoly;
pub use error::Error;
pub use laurent::{divide_exact, q_binomial, q_pochhammer, q_pochhammer_ratio, LaurentPoly};
pub use matrix::RatMat;
pub use qxpoly::QxPoly;
pub use rational::{parse_rational, rational_pow, ExactRational};
pub use spectral::{Q0Limit, SpectralSum, SpectralTerm};
pub use types::{EpsSignature, StateVector};
