//! Shared building blocks for verification reports.
//!
//! Verifiers in this crate never panic on a mathematical mismatch: they
//! return report structs that say what was checked, how many cases were
//! covered, and where the first disagreement (if any) occurred. Reports are
//! serializable so the command-line front end can emit them as JSON.

use serde::{Deserialize, Serialize};

/// Outcome of one named identity checked over some number of cases.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationCheck {
    /// Human-readable name of the identity.
    pub name: String,
    /// Number of cases (index tuples, matrix entries, ...) compared.
    pub cases: u64,
    /// True when every case agreed exactly.
    pub pass: bool,
    /// Description of the first failing case, when any failed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

impl RelationCheck {
    /// A check in which every case passed.
    pub fn passed(name: impl Into<String>, cases: u64) -> Self {
        Self { name: name.into(), cases, pass: true, first_failure: None }
    }

    /// A failed check with a description of the first offending case.
    pub fn failed(name: impl Into<String>, cases: u64, detail: impl Into<String>) -> Self {
        Self { name: name.into(), cases, pass: false, first_failure: Some(detail.into()) }
    }
}

/// True when every check in the slice passed.
pub fn all_pass(checks: &[RelationCheck]) -> bool {
    checks.iter().all(|c| c.pass)
}
