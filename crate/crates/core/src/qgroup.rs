//! A rank-`n` quantum algebra acting on the level bases, and the
//! intertwining property of the spectral operator.
//!
//! For a signature `eps` of length `n >= 2` there are `n` Chevalley
//! triples `(e_g, f_g, k_g)`, `g = 0 .. n-1`, acting on the level-`l`
//! basis (see [`crate::crystal`]) with one spectral parameter `x`:
//! generator `g` moves one unit of occupation from slot `lo(g) = g-1 mod n`
//! to slot `hi(g) = g` (and back for `f_g`), with `g = 0` wrapping around
//! the signature and carrying `x^{+1}` (`e_0`) or `x^{-1}` (`f_0`). The
//! Cartan element `k_g` is diagonal with slotwise bases
//!
//! ```text
//!   q_t = -1/q  (fermionic slot t),   q_t = q  (bosonic slot t).
//! ```
//!
//! [`check_algebra_relations`] verifies the defining relations on exact
//! matrices; [`verify_intertwiner`] verifies that the spectral operator
//! at `z = x/y` commutes with the action in the precise sense
//! `Delta'(g) . S = S . Delta(g)`, where `Delta` and `Delta'` are the two
//! opposite coproducts.

use num::{One, Zero};
use serde::Serialize;

use crate::crystal::Crystal;
use crate::error::Error;
use crate::matrix::RatMat;
use crate::rational::{is_degenerate_q, rational_pow, ExactRational};
use crate::report::RelationCheck;
use crate::smatrix::s_block;
use crate::types::{EpsSignature, StateVector};

/// A Chevalley generator, by kind and index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    /// Raising generator `e_g`.
    E(usize),
    /// Lowering generator `f_g`.
    F(usize),
    /// Cartan element `k_g`.
    K(usize),
    /// Inverse Cartan element `k_g^{-1}`.
    KInv(usize),
}

/// Which of the two opposite coproducts to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoproductSide {
    /// `Delta(e) = 1 (x) e + e (x) k`, `Delta(f) = f (x) 1 + k^{-1} (x) f`.
    Standard,
    /// `Delta'(e) = e (x) 1 + k (x) e`, `Delta'(f) = 1 (x) f + f (x) k^{-1}`.
    Opposite,
}

/// One level representation with exact matrices for every generator.
#[derive(Debug, Clone)]
pub struct Rep {
    eps: EpsSignature,
    level: u32,
    basis: Vec<StateVector>,
    e: Vec<RatMat>,
    f: Vec<RatMat>,
    k: Vec<RatMat>,
    k_inv: Vec<RatMat>,
}

impl Rep {
    /// The signature acted on.
    pub fn eps(&self) -> &EpsSignature {
        &self.eps
    }

    /// The level of the representation.
    pub fn level(&self) -> u32 {
        self.level
    }

    /// Basis words, ascending lexicographic.
    pub fn basis(&self) -> &[StateVector] {
        &self.basis
    }

    /// Matrix of `e_g`.
    pub fn e(&self, g: usize) -> &RatMat {
        &self.e[g]
    }

    /// Matrix of `f_g`.
    pub fn f(&self, g: usize) -> &RatMat {
        &self.f[g]
    }

    /// Matrix of `k_g`.
    pub fn k(&self, g: usize) -> &RatMat {
        &self.k[g]
    }

    /// Matrix of `k_g^{-1}`.
    pub fn k_inv(&self, g: usize) -> &RatMat {
        &self.k_inv[g]
    }

    /// Matrix of an arbitrary generator.
    pub fn generator(&self, gen: Generator) -> &RatMat {
        match gen {
            Generator::E(g) => self.e(g),
            Generator::F(g) => self.f(g),
            Generator::K(g) => self.k(g),
            Generator::KInv(g) => self.k_inv(g),
        }
    }
}

/// Slot of origin of generator `g` (its raising action removes a unit
/// here).
fn lo(g: usize, n: usize) -> usize {
    (g + n - 1) % n
}

/// Destination slot of generator `g`.
fn hi(g: usize, _n: usize) -> usize {
    g
}

/// Slotwise deformation base: `-1/q` on fermionic slots, `q` on bosonic.
fn q_slot(eps: &EpsSignature, t: usize, q: &ExactRational) -> ExactRational {
    if eps.is_fermionic(t) {
        -(ExactRational::one() / q)
    } else {
        q.clone()
    }
}

/// The symmetric quantum integer `[m] = (q^m - q^{-m}) / (q - q^{-1})`.
fn q_int(q: &ExactRational, m: u32) -> ExactRational {
    let m = i64::from(m);
    let num = rational_pow(q, m).expect("nonzero q") - rational_pow(q, -m).expect("nonzero q");
    let den = q - &(ExactRational::one() / q);
    num / den
}

fn check_point(eps: &EpsSignature, q: &ExactRational, x: &ExactRational) -> Result<(), Error> {
    if eps.len() < 2 {
        return Err(Error::InvalidState(format!(
            "the algebra needs rank >= 2, got signature of length {}",
            eps.len()
        )));
    }
    if is_degenerate_q(q) {
        return Err(Error::DegenerateParameter(format!(
            "q = {q} must be nonzero and not a unit"
        )));
    }
    if x.is_zero() {
        return Err(Error::DegenerateParameter("x must be nonzero".into()));
    }
    Ok(())
}

/// Exact matrices of all generators on the level-`l` basis with spectral
/// parameter `x`.
///
/// # Errors
///
/// Returns [`Error::InvalidState`] for rank `< 2` and
/// [`Error::DegenerateParameter`] for `q` zero/unit or `x` zero.
pub fn rep_matrices(
    eps: &EpsSignature,
    l: u32,
    q: &ExactRational,
    x: &ExactRational,
) -> Result<Rep, Error> {
    check_point(eps, q, x)?;
    let n = eps.len();
    let crystal = Crystal::new(eps.clone());
    let basis = crystal.enumerate(l);
    let dim = basis.len();
    let index_of = |w: &StateVector| basis.binary_search(w).ok();
    let mut e = Vec::with_capacity(n);
    let mut f = Vec::with_capacity(n);
    let mut k = Vec::with_capacity(n);
    let mut k_inv = Vec::with_capacity(n);
    for g in 0..n {
        let (src, dst) = (lo(g, n), hi(g, n));
        let mut eg = RatMat::zero(dim, dim);
        let mut fg = RatMat::zero(dim, dim);
        let mut kg = RatMat::zero(dim, dim);
        let mut kg_inv = RatMat::zero(dim, dim);
        for (col, w) in basis.iter().enumerate() {
            // e_g moves a unit from src to dst; out-of-range images drop.
            if w.get(src) > 0 {
                let mut img = w.entries().to_vec();
                img[src] -= 1;
                img[dst] += 1;
                let img = StateVector::new(img);
                if img.check_admissible(eps).is_ok() {
                    if let Some(row) = index_of(&img) {
                        let mut coeff = q_int(q, w.get(src));
                        if g == 0 {
                            coeff *= x;
                        }
                        eg[(row, col)] = coeff;
                    }
                }
            }
            // f_g moves a unit from dst back to src.
            if w.get(dst) > 0 {
                let mut img = w.entries().to_vec();
                img[dst] -= 1;
                img[src] += 1;
                let img = StateVector::new(img);
                if img.check_admissible(eps).is_ok() {
                    if let Some(row) = index_of(&img) {
                        let mut coeff = q_int(q, w.get(dst));
                        if g == 0 {
                            coeff /= x;
                        }
                        fg[(row, col)] = coeff;
                    }
                }
            }
            // k_g is diagonal with slotwise bases.
            let ev = rational_pow(&q_slot(eps, src, q), -i64::from(w.get(src)))?
                * rational_pow(&q_slot(eps, dst, q), i64::from(w.get(dst)))?;
            kg_inv[(col, col)] = ExactRational::one() / &ev;
            kg[(col, col)] = ev;
        }
        e.push(eg);
        f.push(fg);
        k.push(kg);
        k_inv.push(kg_inv);
    }
    Ok(Rep { eps: eps.clone(), level: l, basis, e, f, k, k_inv })
}

/// The factor in `k_g e_h = D_{g,h} e_h k_g`, from the diagonal eigenvalue
/// shift: `e_h` moves occupation from `lo(h)` to `hi(h)`, scaling the
/// `k_g` eigenvalue by the slotwise bases the move touches.
fn exchange_ratio(
    eps: &EpsSignature,
    q: &ExactRational,
    g: usize,
    h: usize,
) -> Result<ExactRational, Error> {
    let n = eps.len();
    let delta = |a: usize, b: usize| i64::from(a == b);
    let e1 = delta(lo(g, n), lo(h, n)) - delta(lo(g, n), hi(h, n));
    let e2 = delta(hi(g, n), hi(h, n)) - delta(hi(g, n), lo(h, n));
    Ok(rational_pow(&q_slot(eps, lo(g, n), q), e1)?
        * rational_pow(&q_slot(eps, hi(g, n), q), e2)?)
}

/// Outcome of checking the defining relations on one level.
#[derive(Debug, Clone, Serialize)]
pub struct AlgebraReport {
    /// Signature checked.
    pub eps: EpsSignature,
    /// Level of the representation.
    pub level: u32,
    /// The exact `q` used.
    pub q: String,
    /// The exact spectral parameter used.
    pub x: String,
    /// One entry per relation family.
    pub checks: Vec<RelationCheck>,
}

impl AlgebraReport {
    /// True when every relation held.
    pub fn passed(&self) -> bool {
        crate::report::all_pass(&self.checks)
    }
}

/// Verifies the defining relations of the algebra on the level-`l`
/// representation at an exact point: invertibility of the Cartan
/// elements, their commutativity, the `k`-`e` and `k`-`f` exchange with
/// the slotwise factors, and the `e`-`f` bracket
/// `e_g f_h - f_h e_g = delta_{g,h} (k_g - k_g^{-1}) / (q - q^{-1})`.
///
/// # Errors
///
/// Same conditions as [`rep_matrices`].
pub fn check_algebra_relations(
    eps: &EpsSignature,
    l: u32,
    q: &ExactRational,
    x: &ExactRational,
) -> Result<AlgebraReport, Error> {
    let rep = rep_matrices(eps, l, q, x)?;
    let n = eps.len();
    let dim = rep.basis.len();
    let id = RatMat::identity(dim);
    let mut checks = Vec::new();

    let mut fail: Option<String> = None;
    for g in 0..n {
        if rep.k[g].mul(&rep.k_inv[g]) != id || rep.k_inv[g].mul(&rep.k[g]) != id {
            fail = Some(format!("k_{g} k_{g}^-1 != 1"));
            break;
        }
    }
    checks.push(named(fail, "Cartan inverses", n as u64));

    let mut fail: Option<String> = None;
    'outer_kk: for g in 0..n {
        for h in 0..n {
            if rep.k[g].mul(&rep.k[h]) != rep.k[h].mul(&rep.k[g]) {
                fail = Some(format!("[k_{g}, k_{h}] != 0"));
                break 'outer_kk;
            }
        }
    }
    checks.push(named(fail, "Cartan commutativity", (n * n) as u64));

    let mut fail_e: Option<String> = None;
    let mut fail_f: Option<String> = None;
    for g in 0..n {
        for h in 0..n {
            let d = exchange_ratio(eps, q, g, h)?;
            if fail_e.is_none() && rep.k[g].mul(&rep.e[h]) != rep.e[h].mul(&rep.k[g]).scale(&d) {
                fail_e = Some(format!("k_{g} e_{h} exchange factor wrong"));
            }
            let d_inv = ExactRational::one() / d;
            if fail_f.is_none() && rep.k[g].mul(&rep.f[h]) != rep.f[h].mul(&rep.k[g]).scale(&d_inv)
            {
                fail_f = Some(format!("k_{g} f_{h} exchange factor wrong"));
            }
        }
    }
    checks.push(named(fail_e, "k-e exchange", (n * n) as u64));
    checks.push(named(fail_f, "k-f exchange", (n * n) as u64));

    let mut fail: Option<String> = None;
    let den = q - &(ExactRational::one() / q);
    'outer_ef: for g in 0..n {
        for h in 0..n {
            let bracket = rep.e[g].mul(&rep.f[h]).sub(&rep.f[h].mul(&rep.e[g]));
            let expected = if g == h {
                rep.k[g].sub(&rep.k_inv[g]).scale(&(ExactRational::one() / &den))
            } else {
                RatMat::zero(dim, dim)
            };
            if bracket != expected {
                fail = Some(format!("e_{g} f_{h} bracket wrong"));
                break 'outer_ef;
            }
        }
    }
    checks.push(named(fail, "e-f bracket", (n * n) as u64));

    Ok(AlgebraReport {
        eps: eps.clone(),
        level: l,
        q: q.to_string(),
        x: x.to_string(),
        checks,
    })
}

fn named(fail: Option<String>, name: &str, cases: u64) -> RelationCheck {
    match fail {
        None => RelationCheck::passed(name, cases),
        Some(detail) => RelationCheck::failed(name, cases, detail),
    }
}

/// Matrix of a coproduct image on the tensor product of two
/// representations (first factor major, matching the spectral operator's
/// index order).
fn coproduct_from_reps(
    rep_l: &Rep,
    rep_m: &Rep,
    side: CoproductSide,
    gen: Generator,
) -> RatMat {
    let id_l = RatMat::identity(rep_l.basis.len());
    let id_m = RatMat::identity(rep_m.basis.len());
    match (side, gen) {
        (_, Generator::K(g)) => rep_l.k(g).kron(rep_m.k(g)),
        (_, Generator::KInv(g)) => rep_l.k_inv(g).kron(rep_m.k_inv(g)),
        (CoproductSide::Standard, Generator::E(g)) => {
            id_l.kron(rep_m.e(g)).add(&rep_l.e(g).kron(rep_m.k(g)))
        }
        (CoproductSide::Opposite, Generator::E(g)) => {
            rep_l.e(g).kron(&id_m).add(&rep_l.k(g).kron(rep_m.e(g)))
        }
        (CoproductSide::Standard, Generator::F(g)) => {
            rep_l.f(g).kron(&id_m).add(&rep_l.k_inv(g).kron(rep_m.f(g)))
        }
        (CoproductSide::Opposite, Generator::F(g)) => {
            id_l.kron(rep_m.f(g)).add(&rep_l.f(g).kron(rep_m.k_inv(g)))
        }
    }
}

/// Matrix of `Delta(gen)` (or `Delta'(gen)`) on the level pair `(l, m)`
/// with spectral parameters `(x, y)`.
///
/// # Errors
///
/// Same conditions as [`rep_matrices`], for either factor.
#[allow(clippy::too_many_arguments)]
pub fn coproduct_action(
    eps: &EpsSignature,
    l: u32,
    m: u32,
    q: &ExactRational,
    x: &ExactRational,
    y: &ExactRational,
    side: CoproductSide,
    gen: Generator,
) -> Result<RatMat, Error> {
    let rep_l = rep_matrices(eps, l, q, x)?;
    let rep_m = rep_matrices(eps, m, q, y)?;
    Ok(coproduct_from_reps(&rep_l, &rep_m, side, gen))
}

/// Outcome of the intertwining check.
#[derive(Debug, Clone, Serialize)]
pub struct IntertwinerReport {
    /// Signature checked.
    pub eps: EpsSignature,
    /// Level of the first factor.
    pub l: u32,
    /// Level of the second factor.
    pub m: u32,
    /// The exact point, as strings.
    pub q: String,
    /// Spectral parameter of the first factor.
    pub x: String,
    /// Spectral parameter of the second factor.
    pub y: String,
    /// Dimension of the tensor product.
    pub dim: usize,
    /// One entry per generator kind.
    pub checks: Vec<RelationCheck>,
}

impl IntertwinerReport {
    /// True when the operator intertwined every generator.
    pub fn passed(&self) -> bool {
        crate::report::all_pass(&self.checks)
    }
}

/// Checks `Delta'(gen) . S = S . Delta(gen)` for every generator on
/// `B_l (x) B_m`, with the spectral operator evaluated at `z = x / y`.
///
/// # Errors
///
/// Propagates representation guards, and [`Error::PoleAtPoint`] when
/// `x / y` hits a pole of the operator.
pub fn verify_intertwiner(
    eps: &EpsSignature,
    l: u32,
    m: u32,
    q: &ExactRational,
    x: &ExactRational,
    y: &ExactRational,
) -> Result<IntertwinerReport, Error> {
    check_point(eps, q, x)?;
    if y.is_zero() {
        return Err(Error::DegenerateParameter("y must be nonzero".into()));
    }
    let rep_l = rep_matrices(eps, l, q, x)?;
    let rep_m = rep_matrices(eps, m, q, y)?;
    let z = x / y;
    let s = s_block(eps, l, m)?.to_matrix(q, &z)?;
    let n = eps.len();
    let mut checks = Vec::new();
    for (label, make) in [
        ("raising generators", Generator::E as fn(usize) -> Generator),
        ("lowering generators", Generator::F as fn(usize) -> Generator),
        ("Cartan elements", Generator::K as fn(usize) -> Generator),
        ("inverse Cartan elements", Generator::KInv as fn(usize) -> Generator),
    ] {
        let mut fail: Option<String> = None;
        for g in 0..n {
            let gen = make(g);
            let lhs = coproduct_from_reps(&rep_l, &rep_m, CoproductSide::Opposite, gen).mul(&s);
            let rhs = s.mul(&coproduct_from_reps(&rep_l, &rep_m, CoproductSide::Standard, gen));
            if lhs != rhs {
                let pos = lhs.mismatch_positions(&rhs, 3);
                fail = Some(format!("generator index {g}, first mismatches {pos:?}"));
                break;
            }
        }
        checks.push(named(fail, label, n as u64));
    }
    Ok(IntertwinerReport {
        eps: eps.clone(),
        l,
        m,
        q: q.to_string(),
        x: x.to_string(),
        y: y.to_string(),
        dim: rep_l.basis.len() * rep_m.basis.len(),
        checks,
    })
}
