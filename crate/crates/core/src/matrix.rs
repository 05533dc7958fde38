//! Dense matrices over exact rationals.
//!
//! [`RatMat`] supports exactly the operations the verifiers need: addition,
//! multiplication, Kronecker products, scaling, and exact equality. Entries
//! are arbitrary-precision rationals, so every comparison is a genuine
//! identity check rather than a numerical tolerance.

use std::fmt;
use std::ops::{Index, IndexMut};

use num::traits::Zero;

use crate::rational::ExactRational;

/// A dense `rows x cols` matrix of exact rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMat {
    rows: usize,
    cols: usize,
    data: Vec<ExactRational>,
}

impl RatMat {
    /// The zero matrix of the given shape.
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ExactRational::zero(); rows * cols],
        }
    }

    /// The identity matrix of size `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        let one = ExactRational::from_integer(1.into());
        for i in 0..n {
            m[(i, i)] = one.clone();
        }
        m
    }

    /// Builds a matrix entry by entry.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> ExactRational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// True when every entry is zero.
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Matrix product `self * rhs`.
    ///
    /// # Panics
    ///
    /// Panics when the inner dimensions disagree.
    pub fn mul(&self, rhs: &RatMat) -> RatMat {
        assert_eq!(
            self.cols, rhs.rows,
            "matrix product dimension mismatch: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = RatMat::zero(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = &rhs[(k, c)];
                    if b.is_zero() {
                        continue;
                    }
                    let cell = &mut out[(r, c)];
                    *cell += a * b;
                }
            }
        }
        out
    }

    /// Entrywise sum.
    ///
    /// # Panics
    ///
    /// Panics on shape mismatch.
    pub fn add(&self, rhs: &RatMat) -> RatMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum shape mismatch");
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a + b)
            .collect();
        RatMat { rows: self.rows, cols: self.cols, data }
    }

    /// Entrywise difference.
    ///
    /// # Panics
    ///
    /// Panics on shape mismatch.
    pub fn sub(&self, rhs: &RatMat) -> RatMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference shape mismatch");
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a - b)
            .collect();
        RatMat { rows: self.rows, cols: self.cols, data }
    }

    /// Multiplies every entry by `s`.
    pub fn scale(&self, s: &ExactRational) -> RatMat {
        RatMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// Kronecker product; the left factor indexes the major blocks, so
    /// `(self ⊗ rhs)[(a r2 + r1, b c2 + c1)] = self[(a, b)] * rhs[(r1, c1)]`
    /// with `r2 = rhs.rows`, `c2 = rhs.cols`.
    pub fn kron(&self, rhs: &RatMat) -> RatMat {
        let mut out = RatMat::zero(self.rows * rhs.rows, self.cols * rhs.cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = &self[(r1, c1)];
                if a.is_zero() {
                    continue;
                }
                for r2 in 0..rhs.rows {
                    for c2 in 0..rhs.cols {
                        let b = &rhs[(r2, c2)];
                        if b.is_zero() {
                            continue;
                        }
                        out[(r1 * rhs.rows + r2, c1 * rhs.cols + c2)] = a * b;
                    }
                }
            }
        }
        out
    }

    /// Positions of entries where `self` and `rhs` differ, up to `limit`.
    pub fn mismatch_positions(&self, rhs: &RatMat, limit: usize) -> Vec<(usize, usize)> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "comparison shape mismatch");
        let mut out = Vec::new();
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self[(r, c)] != rhs[(r, c)] {
                    out.push((r, c));
                    if out.len() >= limit {
                        return out;
                    }
                }
            }
        }
        out
    }
}

impl Index<(usize, usize)> for RatMat {
    type Output = ExactRational;
    fn index(&self, (r, c): (usize, usize)) -> &ExactRational {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of {}x{}", self.rows, self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for RatMat {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut ExactRational {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of {}x{}", self.rows, self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Display for RatMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::parse_rational;

    fn q(s: &str) -> ExactRational {
        parse_rational(s).unwrap()
    }

    fn mat(rows: usize, cols: usize, entries: &[&str]) -> RatMat {
        assert_eq!(entries.len(), rows * cols);
        RatMat::from_fn(rows, cols, |r, c| q(entries[r * cols + c]))
    }

    #[test]
    fn product_and_identity() {
        let a = mat(2, 2, &["1", "1/2", "0", "-3"]);
        let i = RatMat::identity(2);
        assert_eq!(a.mul(&i), a);
        assert_eq!(i.mul(&a), a);
        let b = mat(2, 2, &["2", "0", "4", "1"]);
        // [[1,1/2],[0,-3]] * [[2,0],[4,1]] = [[4,1/2],[-12,-3]]
        assert_eq!(a.mul(&b), mat(2, 2, &["4", "1/2", "-12", "-3"]));
    }

    #[test]
    fn rectangular_product() {
        let a = mat(2, 3, &["1", "2", "3", "0", "1", "0"]);
        let b = mat(3, 1, &["1", "1/2", "-1"]);
        assert_eq!(a.mul(&b), mat(2, 1, &["-1", "1/2"]));
    }

    #[test]
    fn kron_block_layout() {
        let a = mat(2, 2, &["1", "2", "3", "4"]);
        let b = mat(2, 2, &["0", "1", "1", "0"]);
        let k = a.kron(&b);
        assert_eq!(k.rows(), 4);
        // Block (0,1) must be 2*b.
        assert_eq!(k[(0, 2)], q("0"));
        assert_eq!(k[(0, 3)], q("2"));
        assert_eq!(k[(1, 2)], q("2"));
        // Mixed identity: (a⊗1)(1⊗b) == a⊗b.
        let left = a.kron(&RatMat::identity(2));
        let right = RatMat::identity(2).kron(&b);
        assert_eq!(left.mul(&right), k);
        assert_eq!(right.mul(&left), k);
    }

    #[test]
    fn add_sub_scale_and_mismatches() {
        let a = mat(1, 2, &["1", "2"]);
        let b = mat(1, 2, &["1/3", "2"]);
        assert_eq!(a.sub(&b).add(&b), a);
        assert_eq!(a.scale(&q("3")), mat(1, 2, &["3", "6"]));
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.mismatch_positions(&b, 8), vec![(0, 0)]);
        assert!(a.mismatch_positions(&a, 8).is_empty());
    }
}
