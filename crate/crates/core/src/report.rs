//! Check records and run reports shared by the library and the command-line
//! front end.
//!
//! Reports serialize deterministically: parameters live in ordered maps,
//! checks are sorted before serialization, and wall-clock duration is kept
//! out of the JSON so identical inputs give byte-identical output.

use serde::Serialize;
use std::collections::BTreeMap;
use std::time::Duration;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The check could not run, e.g. a resource bound was exceeded.
    Error,
}

/// Outcome of one named check on one case.
#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub family: String,
    pub rank: usize,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckRecord {
    pub fn pass(check: impl Into<String>, family: impl Into<String>, rank: usize) -> Self {
        CheckRecord {
            check: check.into(),
            family: family.into(),
            rank,
            status: CheckStatus::Pass,
            witness: None,
        }
    }

    pub fn fail(
        check: impl Into<String>,
        family: impl Into<String>,
        rank: usize,
        witness: impl Into<String>,
    ) -> Self {
        CheckRecord {
            check: check.into(),
            family: family.into(),
            rank,
            status: CheckStatus::Fail,
            witness: Some(witness.into()),
        }
    }

    pub fn of(
        check: impl Into<String>,
        family: impl Into<String>,
        rank: usize,
        ok: bool,
        witness: impl Into<String>,
    ) -> Self {
        if ok {
            CheckRecord::pass(check, family, rank)
        } else {
            CheckRecord::fail(check, family, rank, witness)
        }
    }

    pub fn error(
        check: impl Into<String>,
        family: impl Into<String>,
        rank: usize,
        witness: impl Into<String>,
    ) -> Self {
        CheckRecord {
            check: check.into(),
            family: family.into(),
            rank,
            status: CheckStatus::Error,
            witness: Some(witness.into()),
        }
    }
}

/// Full result of one command invocation.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub params: BTreeMap<String, String>,
    pub status: CheckStatus,
    pub checks: Vec<CheckRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<serde_json::Value>,
    #[serde(skip)]
    pub duration: Duration,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        RunReport {
            command: command.into(),
            params: BTreeMap::new(),
            status: CheckStatus::Pass,
            checks: Vec::new(),
            report: None,
            duration: Duration::ZERO,
        }
    }

    pub fn param(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.params.insert(key.into(), value.to_string());
        self
    }

    pub fn push(&mut self, record: CheckRecord) {
        self.checks.push(record);
    }

    pub fn extend(&mut self, records: impl IntoIterator<Item = CheckRecord>) {
        self.checks.extend(records);
    }

    /// Sort checks and derive the overall status: pass only when every
    /// record passes; an error record dominates plain failures.
    pub fn finalize(&mut self) {
        self.checks
            .sort_by(|a, b| (&a.check, &a.family, a.rank).cmp(&(&b.check, &b.family, b.rank)));
        self.status = if self.checks.iter().any(|c| c.status == CheckStatus::Error) {
            CheckStatus::Error
        } else if self.checks.iter().any(|c| c.status == CheckStatus::Fail) {
            CheckStatus::Fail
        } else {
            CheckStatus::Pass
        };
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == CheckStatus::Pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization cannot fail")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duration_is_not_serialized() {
        let mut r = RunReport::new("demo");
        r.param("seed", 7);
        r.push(CheckRecord::pass("x", "A", 2));
        r.finalize();
        let mut s1 = r.clone();
        s1.duration = Duration::from_millis(5);
        let mut s2 = r.clone();
        s2.duration = Duration::from_millis(999);
        assert_eq!(s1.to_json(), s2.to_json());
        assert!(!s1.to_json().contains("duration"));
    }

    #[test]
    fn finalize_sorts_and_aggregates() {
        let mut r = RunReport::new("demo");
        r.push(CheckRecord::pass("z", "A", 2));
        r.push(CheckRecord::fail("a", "B", 3, "bad"));
        r.finalize();
        assert_eq!(r.checks[0].check, "a");
        assert_eq!(r.status, CheckStatus::Fail);
        assert!(r.to_json().contains("\"witness\":\"bad\""));
    }
}
