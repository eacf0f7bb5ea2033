//! Structured pass/fail records shared by every verification suite.

use std::collections::BTreeMap;

use serde::Serialize;

/// Witnesses kept per check; further failures are only counted.
pub const MAX_WITNESSES: usize = 8;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Failure {
    #[serde(flatten)]
    pub inputs: BTreeMap<String, String>,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    /// Whether the property is one the algebra is expected to satisfy.
    /// Unclaimed checks are informational and never fail a run.
    pub claimed: bool,
    pub trials: usize,
    pub failed: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub failures: Vec<Failure>,
}

impl Check {
    pub fn new(name: impl Into<String>, claimed: bool) -> Self {
        Self {
            name: name.into(),
            claimed,
            trials: 0,
            failed: 0,
            max_residual: None,
            note: None,
            failures: Vec::new(),
        }
    }

    pub fn pass(&mut self) {
        self.trials += 1;
    }

    pub fn fail<I, K, V>(&mut self, inputs: I, residual: impl Into<String>)
    where
        I: IntoIterator<Item = (K, V)>,
        K: Into<String>,
        V: Into<String>,
    {
        self.trials += 1;
        self.failed += 1;
        if self.failures.len() < MAX_WITNESSES {
            self.failures.push(Failure {
                inputs: inputs
                    .into_iter()
                    .map(|(k, v)| (k.into(), v.into()))
                    .collect(),
                residual: residual.into(),
            });
        }
    }

    /// Records one trial as passed or failed.
    pub fn record<I, K, V>(&mut self, ok: bool, inputs: impl FnOnce() -> I, residual: impl FnOnce() -> String)
    where
        I: IntoIterator<Item = (K, V)>,
        K: Into<String>,
        V: Into<String>,
    {
        if ok {
            self.pass();
        } else {
            self.fail(inputs(), residual());
        }
    }

    pub fn observe(&mut self, residual: f64) {
        self.max_residual = Some(match self.max_residual {
            Some(m) => m.max(residual),
            None => residual,
        });
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub subject: String,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, subject: impl Into<String>) -> Self {
        Self {
            suite: suite.into(),
            subject: subject.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// True when every claimed check passed.
    pub fn claims_hold(&self) -> bool {
        self.checks.iter().filter(|c| c.claimed).all(Check::passed)
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
