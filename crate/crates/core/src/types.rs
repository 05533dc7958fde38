//! Shared small types: signatures and occupation-number vectors.
//!
//! An [`EpsSignature`] selects, slot by slot, whether a tensor leg carries a
//! symmetric (bosonic, `0`) or an exterior (fermionic, `1`) oscillator. A
//! [`StateVector`] is a tuple of occupation numbers; admissibility against a
//! signature caps fermionic slots at one.

use std::fmt;

use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::Error;

/// A nonempty word over `{0, 1}` choosing the oscillator type of each slot.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EpsSignature(Vec<u8>);

impl EpsSignature {
    /// Builds a signature from raw bits.
    ///
    /// # Errors
    ///
    /// Returns [`Error::SignatureMismatch`] when the slice is empty or
    /// contains entries other than 0 and 1.
    pub fn new(bits: Vec<u8>) -> Result<Self, Error> {
        if bits.is_empty() {
            return Err(Error::SignatureMismatch("signature must be nonempty".into()));
        }
        if let Some(bad) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::SignatureMismatch(format!(
                "signature entries must be 0 or 1, got {bad}"
            )));
        }
        Ok(Self(bits))
    }

    /// Parses a compact literal such as `"101"`.
    ///
    /// # Errors
    ///
    /// Returns [`Error::SignatureMismatch`] on empty input or characters
    /// other than `0`/`1`.
    pub fn parse(s: &str) -> Result<Self, Error> {
        let bits: Result<Vec<u8>, Error> = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::SignatureMismatch(format!(
                    "signature characters must be 0 or 1, got {other:?}"
                ))),
            })
            .collect();
        Self::new(bits?)
    }

    /// Number of slots.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false: signatures are nonempty by construction.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The raw bits.
    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    /// True when slot `t` (0-based) is fermionic.
    ///
    /// # Panics
    ///
    /// Panics when `t` is out of range.
    pub fn is_fermionic(&self, t: usize) -> bool {
        self.0[t] == 1
    }
}

impl fmt::Display for EpsSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl Serialize for EpsSignature {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for EpsSignature {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Self::parse(&s).map_err(de::Error::custom)
    }
}

/// A tuple of occupation numbers, one per slot.
///
/// Ordering is lexicographic, which fixes the basis enumeration order used
/// throughout the crate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StateVector(Vec<u32>);

impl StateVector {
    /// Wraps raw occupation numbers.
    pub fn new(entries: Vec<u32>) -> Self {
        Self(entries)
    }

    /// Parses either a compact digit string (`"031"`) or a comma-separated
    /// list (`"0,3,1"`, required when any entry exceeds 9).
    ///
    /// # Errors
    ///
    /// Returns [`Error::Parse`] on malformed input.
    pub fn parse(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty state vector".into()));
        }
        if s.contains(',') {
            let entries: Result<Vec<u32>, _> = s
                .split(',')
                .map(|part| {
                    part.trim()
                        .parse::<u32>()
                        .map_err(|e| Error::Parse(format!("bad occupation {part:?}: {e}")))
                })
                .collect();
            return Ok(Self(entries?));
        }
        let entries: Result<Vec<u32>, Error> = s
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .ok_or_else(|| Error::Parse(format!("bad occupation digit {c:?}")))
            })
            .collect();
        Ok(Self(entries?))
    }

    /// Number of slots.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// True when the vector has no slots.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The occupation number of slot `t` (0-based).
    ///
    /// # Panics
    ///
    /// Panics when `t` is out of range.
    pub fn get(&self, t: usize) -> u32 {
        self.0[t]
    }

    /// The raw entries.
    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// Total occupation (the level of the vector).
    pub fn level(&self) -> u64 {
        self.0.iter().map(|&x| u64::from(x)).sum()
    }

    /// Checks that the vector has one entry per signature slot and respects
    /// the fermionic occupation cap.
    ///
    /// # Errors
    ///
    /// Returns [`Error::SignatureMismatch`] on a length mismatch and
    /// [`Error::InvalidState`] when a fermionic slot holds more than one.
    pub fn check_admissible(&self, eps: &EpsSignature) -> Result<(), Error> {
        if self.len() != eps.len() {
            return Err(Error::SignatureMismatch(format!(
                "state {self} has {} slots but signature {eps} has {}",
                self.len(),
                eps.len()
            )));
        }
        for (t, &x) in self.0.iter().enumerate() {
            if eps.is_fermionic(t) && x > 1 {
                return Err(Error::InvalidState(format!(
                    "state {self}: slot {t} is fermionic but holds {x}"
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&x| x <= 9) {
            for x in &self.0 {
                write!(f, "{x}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}
