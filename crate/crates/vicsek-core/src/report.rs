//! Plain result structures for the verification suites.
//!
//! These stay serialization-agnostic; the CLI turns them into JSON.

use alloc::string::String;
use alloc::vec::Vec;

/// An address (word letters plus corner) with the value observed there.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub word: Vec<u8>,
    pub corner: u8,
    pub value: f64,
}

/// Outcome of one named property check.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub name: String,
    pub pass: bool,
    pub details: String,
    /// Extremal or offending addresses (capped by the caller).
    pub witnesses: Vec<Witness>,
    /// Named scalar observations (residuals, observed bounds, ...).
    pub extremes: Vec<(String, f64)>,
}

impl CheckReport {
    pub fn passing(name: &str) -> CheckReport {
        CheckReport {
            name: String::from(name),
            pass: true,
            details: String::new(),
            witnesses: Vec::new(),
            extremes: Vec::new(),
        }
    }
}

/// A group of checks run together under one suite name.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn new(suite: &str) -> SuiteReport {
        SuiteReport {
            suite: String::from(suite),
            cases: Vec::new(),
        }
    }

    pub fn pass(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }

    pub fn push(&mut self, case: CheckReport) {
        self.cases.push(case);
    }
}
