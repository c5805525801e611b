//! Pass/fail reports shared by every checker.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// The first counterexample found by a scan.
///
/// `indices` are whatever the scanned objects are indexed by (loop element
/// indices, 1-based basis labels, ...); `detail` spells them out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub indices: Vec<usize>,
    pub detail: String,
}

impl Witness {
    pub fn new(indices: Vec<usize>, detail: impl Into<String>) -> Self {
        Self {
            indices,
            detail: detail.into(),
        }
    }
}

/// Outcome of a single property check. A witness is present iff the check
/// failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub property: String,
    pub passed: bool,
    pub witness: Option<Witness>,
}

impl CheckReport {
    pub fn pass(property: impl Into<String>) -> Self {
        Self {
            property: property.into(),
            passed: true,
            witness: None,
        }
    }

    pub fn fail(property: impl Into<String>, witness: Witness) -> Self {
        Self {
            property: property.into(),
            passed: false,
            witness: Some(witness),
        }
    }

    /// Builds a report from the first witness (if any) of a scan.
    pub fn from_witness(property: impl Into<String>, witness: Option<Witness>) -> Self {
        match witness {
            None => Self::pass(property),
            Some(w) => Self::fail(property, w),
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "pass" } else { "fail" };
        write!(f, "{}={}", self.property, status)?;
        if let Some(w) = &self.witness {
            write!(f, " ({})", w.detail)?;
        }
        Ok(())
    }
}
