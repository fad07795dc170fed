//! Outcomes of verification checks.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    HypothesisNotMet,
    NotApplicable,
    UnknownBudget,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub details: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<serde_json::Value>,
}

impl Check {
    pub fn new(name: impl Into<String>, status: Status, details: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            status,
            details: details.into(),
            counterexample: None,
        }
    }

    pub fn pass(name: impl Into<String>, details: impl Into<String>) -> Check {
        Check::new(name, Status::Pass, details)
    }

    pub fn fail(name: impl Into<String>, details: impl Into<String>) -> Check {
        Check::new(name, Status::Fail, details)
    }

    /// Pass or fail depending on `ok`.
    pub fn verdict(name: impl Into<String>, ok: bool, details: impl Into<String>) -> Check {
        Check::new(name, if ok { Status::Pass } else { Status::Fail }, details)
    }

    pub fn with_counterexample(mut self, value: serde_json::Value) -> Check {
        self.counterexample = Some(value);
        self
    }

    pub fn is_fail(&self) -> bool {
        self.status == Status::Fail
    }

    /// Folds many instances of one check into a single entry: the first
    /// failure if there is one, otherwise a pass counting the instances that
    /// met their hypotheses.
    pub fn aggregate(name: impl Into<String>, checks: impl IntoIterator<Item = Check>) -> Check {
        let name = name.into();
        let checks: Vec<Check> = checks.into_iter().collect();
        let total = checks.len();
        if let Some((i, c)) = checks.iter().enumerate().find(|(_, c)| c.is_fail()) {
            let mut out = Check::fail(name, format!("instance {} of {total}: {}: {}", i + 1, c.name, c.details));
            out.counterexample = c.counterexample.clone();
            return out;
        }
        let passed = checks.iter().filter(|c| c.status == Status::Pass).count();
        let skipped = total - passed;
        let first_skip = checks.iter().find(|c| c.status != Status::Pass);
        if passed == 0 {
            return match first_skip {
                Some(c) => Check::new(name, c.status, format!("all {total} instances skipped: {}", c.details)),
                None => Check::new(name, Status::NotApplicable, "no instances"),
            };
        }
        let mut details = format!("{passed} instances pass");
        if let Some(c) = first_skip {
            details.push_str(&format!(", {skipped} skipped (e.g. {})", c.details));
        }
        Check::pass(name, details)
    }
}

/// An ordered collection of checks.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        !self.checks.iter().any(Check::is_fail)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| c.is_fail()).collect()
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn prefixed(mut self, prefix: &str) -> Report {
        for c in &mut self.checks {
            c.name = format!("{prefix}: {}", c.name);
        }
        self
    }
}

impl From<Check> for Report {
    fn from(c: Check) -> Report {
        Report { checks: vec![c] }
    }
}

impl FromIterator<Check> for Report {
    fn from_iter<I: IntoIterator<Item = Check>>(iter: I) -> Report {
        Report {
            checks: iter.into_iter().collect(),
        }
    }
}
