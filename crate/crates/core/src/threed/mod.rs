//! Three-dimensional solitonic operators and the tetrahedron equations.
//!
//! Two operators act on triples of oscillator legs: a bosonic one (`R`) with
//! all three legs Fock spaces, and a fermionic one (`L`) whose first two
//! legs are two-dimensional. Both conserve the leg combinations `a + b` and
//! `b + c`, satisfy tetrahedron equations, and degenerate at `q = 0` to
//! set-theoretic maps on occupation triples.
//!
//! Submodules:
//!
//! - [`elems`]: exact matrix elements, with three independent routes to the
//!   bosonic one.
//! - [`tetra`]: expansion engine and machine verification of the
//!   tetrahedron equations, including mixed multi-layer versions.
//! - [`combi`]: the `q = 0` combinatorial maps and their set-theoretic
//!   tetrahedron property.
//! - [`props`]: structural properties of the bosonic operator (involution,
//!   symmetries, exponent parity, `q = 0` specialization).

pub mod combi;
pub mod elems;
pub mod props;
pub mod tetra;

pub use combi::{
    comb_te_trace, q0_l_map, q0_layer_map, q0_r_map, verify_combinatorial_te, CombTeFailure,
    CombTeReport, CombTeTrace, TeFamily,
};
pub use elems::{l_elem, layer_elem, r_elem, r_elem_contour, r_elem_series, LayerKind};
pub use props::{check_r_properties, RPropsReport};
pub use tetra::{verify_te_nlayer, verify_te_rlll, verify_te_rrrr, TeMismatch, TeReport};
