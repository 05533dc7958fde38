//! Seeded sampling of exact rational parameter points.
//!
//! Verification at a point needs `q` away from `0` and the units and the
//! spectral parameters away from `0`; on top of that, any concrete triple
//! can accidentally sit on a pole of some matrix entry. The sampler draws
//! small reproducible rationals and the driver redraws on pole or
//! degeneracy errors, so a fixed seed always yields the same accepted
//! points.

use num::BigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ybx_core::{Error, ExactRational};

/// Maximum redraws before giving up on finding a clean point.
const MAX_REDRAWS: usize = 60;

/// Reproducible source of small exact rationals.
pub struct PointSampler {
    rng: ChaCha8Rng,
}

impl PointSampler {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// A nonzero rational with numerator in `±1..=9` and denominator in
    /// `1..=9`.
    pub fn nonzero(&mut self) -> ExactRational {
        let num = loop {
            let n = self.rng.random_range(-9i64..=9);
            if n != 0 {
                break n;
            }
        };
        let den = self.rng.random_range(1i64..=9);
        ExactRational::new(BigInt::from(num), BigInt::from(den))
    }

    /// A nonzero rational that is not `1` or `-1`, usable as `q`.
    pub fn deformation(&mut self) -> ExactRational {
        loop {
            let q = self.nonzero();
            if !ybx_core::rational::is_degenerate_q(&q) {
                return q;
            }
        }
    }
}

/// Runs `check` at `points` sampled parameter triples `(q, x, y)`,
/// redrawing a triple whenever the check reports a pole or a degenerate
/// parameter. Errors of any other kind, or persistent pole hits, are
/// returned.
pub fn sample_points<T>(
    sampler: &mut PointSampler,
    points: u32,
    mut check: impl FnMut(&ExactRational, &ExactRational, &ExactRational) -> Result<T, Error>,
) -> Result<Vec<T>, Error> {
    let mut out = Vec::with_capacity(points as usize);
    for _ in 0..points {
        let mut last = None;
        for _ in 0..MAX_REDRAWS {
            let q = sampler.deformation();
            let x = sampler.nonzero();
            let y = sampler.nonzero();
            match check(&q, &x, &y) {
                Ok(t) => {
                    last = Some(t);
                    break;
                }
                Err(Error::PoleAtPoint(_) | Error::DegenerateParameter(_)) => {}
                Err(e) => return Err(e),
            }
        }
        match last {
            Some(t) => out.push(t),
            None => {
                return Err(Error::PoleAtPoint(format!(
                    "no clean parameter point found in {MAX_REDRAWS} draws"
                )))
            }
        }
    }
    Ok(out)
}
