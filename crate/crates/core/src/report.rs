//! Verification reports produced by the oracle suites.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::rational::{format_ratio, Rational};

/// One checked identity or inequality.
///
/// `expected` is the closed-form side (or the bound), `actual` the side that
/// was counted by enumeration. Both are `p/q` strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub check: String,
    pub params: BTreeMap<String, i64>,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl CheckEntry {
    pub fn equality(check: &str, params: &Params, expected: &Rational, actual: &Rational) -> Self {
        CheckEntry {
            check: check.to_string(),
            params: params.0.clone(),
            expected: format_ratio(expected),
            actual: format_ratio(actual),
            pass: expected == actual,
        }
    }

    /// Passes when `actual <= bound`.
    pub fn at_most(check: &str, params: &Params, bound: &Rational, actual: &Rational) -> Self {
        CheckEntry {
            check: check.to_string(),
            params: params.0.clone(),
            expected: format_ratio(bound),
            actual: format_ratio(actual),
            pass: actual <= bound,
        }
    }

    /// Passes when `actual >= bound`.
    pub fn at_least(check: &str, params: &Params, bound: &Rational, actual: &Rational) -> Self {
        CheckEntry {
            check: check.to_string(),
            params: params.0.clone(),
            expected: format_ratio(bound),
            actual: format_ratio(actual),
            pass: actual >= bound,
        }
    }
}

/// Small ordered parameter map attached to each entry.
#[derive(Debug, Clone, Default)]
pub struct Params(pub BTreeMap<String, i64>);

impl Params {
    pub fn new() -> Self {
        Params::default()
    }

    pub fn with(mut self, key: &str, value: impl TryInto<i64>) -> Self {
        let v = value.try_into().unwrap_or(i64::MAX);
        self.0.insert(key.to_string(), v);
        self
    }
}

/// Serializes as a bare JSON array of entries.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VerificationReport {
    pub entries: Vec<CheckEntry>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, entry: CheckEntry) {
        self.entries.push(entry);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.entries.extend(other.entries);
    }

    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| !e.pass)
    }

    /// Per-check (passed, total) counts in check-name order.
    pub fn summary(&self) -> BTreeMap<String, (usize, usize)> {
        let mut out: BTreeMap<String, (usize, usize)> = BTreeMap::new();
        for e in &self.entries {
            let slot = out.entry(e.check.clone()).or_default();
            slot.1 += 1;
            if e.pass {
                slot.0 += 1;
            }
        }
        out
    }
}
