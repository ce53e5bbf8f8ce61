//! Numerical verification of the structural identities and inequalities
//! satisfied by the Lipschitz derivatives, with machine-readable results.

pub mod brute;
mod checks;
pub mod random;
mod report;
mod suite;

use serde::{Serialize, Serializer};

pub use checks::*;
pub use report::{Report, ReportStatus};
pub use suite::{parse_matrix, run_suite, Fault, Suite, SuiteConfig, Tolerances};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

fn extended<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(*v)
    } else if v.is_nan() {
        s.serialize_str("nan")
    } else if *v > 0.0 {
        s.serialize_str("inf")
    } else {
        s.serialize_str("-inf")
    }
}

/// Outcome of one check. A check passes exactly when its discrepancy is at
/// most its tolerance; failing checks always carry a witness.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    #[serde(serialize_with = "extended")]
    pub discrepancy: f64,
    #[serde(serialize_with = "extended")]
    pub tolerance: f64,
    pub tolerance_rule: String,
    pub witness: Option<String>,
    pub note: Option<String>,
}

impl CheckResult {
    pub fn measured(
        name: impl Into<String>,
        discrepancy: f64,
        tolerance: f64,
        tolerance_rule: impl Into<String>,
        witness: Option<String>,
    ) -> Self {
        let status = if discrepancy <= tolerance { Status::Pass } else { Status::Fail };
        let witness = match (status, witness) {
            (Status::Fail, None) => Some("unlocated".to_string()),
            (_, w) => w,
        };
        Self {
            name: name.into(),
            status,
            discrepancy,
            tolerance,
            tolerance_rule: tolerance_rule.into(),
            witness,
            note: None,
        }
    }

    pub fn skipped(name: impl Into<String>, reason: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            status: Status::Skipped,
            discrepancy: 0.0,
            tolerance: 0.0,
            tolerance_rule: String::new(),
            witness: None,
            note: Some(reason.into()),
        }
    }

    /// A check that could not run because its input was rejected.
    pub fn input_error(name: impl Into<String>, err: &crate::Error) -> Self {
        Self {
            name: name.into(),
            status: Status::Fail,
            discrepancy: f64::INFINITY,
            tolerance: 0.0,
            tolerance_rule: String::new(),
            witness: Some(err.to_string()),
            note: Some("input error".into()),
        }
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Running maximum of a discrepancy with the location that produced it.
#[derive(Debug)]
pub(crate) struct Worst {
    pub value: f64,
    pub witness: Option<String>,
}

impl Worst {
    pub fn new() -> Self {
        Self { value: 0.0, witness: None }
    }

    pub fn observe(&mut self, v: f64, witness: impl FnOnce() -> String) {
        if v > self.value || (v.is_nan() && !self.value.is_nan()) {
            self.value = v;
            self.witness = Some(witness());
        }
    }

    pub fn merge(&mut self, other: Worst) {
        if other.value > self.value {
            *self = other;
        }
    }
}
