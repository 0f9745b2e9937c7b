//! Verification reports: named checks with a status plus an ordered list of
//! measured quantities.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    /// A mathematical statement was falsified on a validated input.
    Finding,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
            Status::Finding => "finding",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "pass" => Some(Status::Pass),
            "fail" => Some(Status::Fail),
            "skipped" => Some(Status::Skipped),
            "finding" => Some(Status::Finding),
            _ => None,
        }
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckEntry {
    pub name: String,
    pub status: Status,
    pub details: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Measure {
    Int(u64),
    Ints(Vec<u64>),
    Bool(bool),
    Text(String),
    Absent,
}

impl From<u64> for Measure {
    fn from(v: u64) -> Self {
        Measure::Int(v)
    }
}

impl From<usize> for Measure {
    fn from(v: usize) -> Self {
        Measure::Int(v as u64)
    }
}

impl From<bool> for Measure {
    fn from(v: bool) -> Self {
        Measure::Bool(v)
    }
}

impl From<&str> for Measure {
    fn from(v: &str) -> Self {
        Measure::Text(v.to_string())
    }
}

impl From<String> for Measure {
    fn from(v: String) -> Self {
        Measure::Text(v)
    }
}

impl<T: Into<Measure>> From<Option<T>> for Measure {
    fn from(v: Option<T>) -> Self {
        v.map_or(Measure::Absent, Into::into)
    }
}

impl From<Vec<u64>> for Measure {
    fn from(v: Vec<u64>) -> Self {
        Measure::Ints(v)
    }
}

impl From<Vec<usize>> for Measure {
    fn from(v: Vec<usize>) -> Self {
        Measure::Ints(v.into_iter().map(|x| x as u64).collect())
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Measure::Int(v) => write!(f, "{v}"),
            Measure::Ints(v) => {
                f.write_str("(")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str(")")
            }
            Measure::Bool(b) => write!(f, "{b}"),
            Measure::Text(s) => f.write_str(s),
            Measure::Absent => f.write_str("none"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub subject: String,
    pub checks: Vec<CheckEntry>,
    pub measured: Vec<(String, Measure)>,
}

impl VerificationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        VerificationReport { subject: subject.into(), ..Default::default() }
    }

    pub fn push(&mut self, name: impl Into<String>, status: Status, details: impl Into<String>) {
        self.checks.push(CheckEntry { name: name.into(), status, details: details.into() });
    }

    pub fn check(&mut self, name: impl Into<String>, ok: bool, details: impl Into<String>) {
        self.push(name, Status::from_bool(ok), details);
    }

    pub fn skip(&mut self, name: impl Into<String>, reason: impl Into<String>) {
        self.push(name, Status::Skipped, reason);
    }

    /// Records a value; a later value under the same key replaces it.
    pub fn measure(&mut self, key: impl Into<String>, value: impl Into<Measure>) {
        let key = key.into();
        let value = value.into();
        match self.measured.iter_mut().find(|(k, _)| *k == key) {
            Some(slot) => slot.1 = value,
            None => self.measured.push((key, value)),
        }
    }

    pub fn get(&self, key: &str) -> Option<&Measure> {
        self.measured.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn entry(&self, name: &str) -> Option<&CheckEntry> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Appends another report's checks and measurements under `prefix.`.
    pub fn absorb(&mut self, prefix: &str, other: VerificationReport) {
        let key = |k: String| if prefix.is_empty() { k } else { alloc::format!("{prefix}.{k}") };
        for c in other.checks {
            self.checks.push(CheckEntry { name: key(c.name), ..c });
        }
        for (k, v) in other.measured {
            self.measure(key(k), v);
        }
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    /// No failure and no finding.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| matches!(c.status, Status::Pass | Status::Skipped))
    }
}
