//! Structured outcomes of checks.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::EvalError;
use crate::symcore::{GenIndex, LambdaPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        }
    }
}

/// A tuple of generators on which an identity failed, with the residual.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub tuple: Vec<GenIndex>,
    pub residual: LambdaPoly,
    pub vars: Vec<String>,
    /// Extra label, e.g. a deformation order or sample number.
    pub label: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub name: String,
    pub status: Status,
    pub checked: usize,
    pub failures: usize,
    pub inconclusive: usize,
    /// The first failing tuples, in enumeration order.
    pub witnesses: Vec<Witness>,
    /// The first window escapes or other evaluation errors encountered.
    pub errors: Vec<EvalError>,
    pub note: Option<String>,
}

pub const MAX_WITNESSES: usize = 8;

impl CheckReport {
    pub fn new(name: &str) -> Self {
        CheckReport {
            name: String::from(name),
            status: Status::Pass,
            checked: 0,
            failures: 0,
            inconclusive: 0,
            witnesses: Vec::new(),
            errors: Vec::new(),
            note: None,
        }
    }

    /// A report for a structure that is absent or a precondition that failed.
    pub fn failed_with(name: &str, note: String) -> Self {
        let mut r = Self::new(name);
        r.status = Status::Fail;
        r.failures = 1;
        r.note = Some(note);
        r
    }

    pub fn with_note(mut self, note: &str) -> Self {
        self.note = Some(String::from(note));
        self
    }

    pub fn record(&mut self, tuple: &[GenIndex], outcome: Result<LambdaPoly, EvalError>, vars: &[String], label: Option<String>) {
        self.checked += 1;
        match outcome {
            Ok(r) if r.is_zero() => {}
            Ok(r) => {
                self.failures += 1;
                if self.witnesses.len() < MAX_WITNESSES {
                    self.witnesses.push(Witness { tuple: tuple.to_vec(), residual: r, vars: vars.to_vec(), label });
                }
            }
            Err(EvalError::WindowEscape { gen }) => {
                self.inconclusive += 1;
                if self.errors.len() < MAX_WITNESSES {
                    self.errors.push(EvalError::WindowEscape { gen });
                }
            }
            Err(e) => {
                self.failures += 1;
                if self.errors.len() < MAX_WITNESSES {
                    self.errors.push(e);
                }
            }
        }
        self.finish();
    }

    fn finish(&mut self) {
        self.status = if self.failures > 0 {
            Status::Fail
        } else if self.inconclusive > 0 {
            Status::Inconclusive
        } else {
            Status::Pass
        };
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Merge another report for the same identity into this one.
    pub fn absorb(&mut self, other: CheckReport) {
        self.checked += other.checked;
        self.failures += other.failures;
        self.inconclusive += other.inconclusive;
        for w in other.witnesses {
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(w);
            }
        }
        for e in other.errors {
            if self.errors.len() < MAX_WITNESSES {
                self.errors.push(e);
            }
        }
        if self.note.is_none() {
            self.note = other.note;
        }
        self.finish();
    }

    /// Mark a report as failed from an external reason (e.g. disagreement of
    /// two independent computations).
    pub fn fail_with(&mut self, note: String) {
        self.failures += 1;
        self.note = Some(note);
        self.finish();
    }
}

/// Combined status of several reports: any failure fails, otherwise any
/// inconclusive is inconclusive.
pub fn overall(reports: &[CheckReport]) -> Status {
    if reports.iter().any(|r| r.status == Status::Fail) {
        Status::Fail
    } else if reports.iter().any(|r| r.status == Status::Inconclusive) {
        Status::Inconclusive
    } else {
        Status::Pass
    }
}
