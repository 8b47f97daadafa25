//! Check results and suite reports.

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Reconciled,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Reconciled => "RECONCILED",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    pub statement: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
    pub elapsed_ms: u64,
}

impl CheckResult {
    pub fn pass(id: impl Into<String>, statement: impl Into<String>) -> Self {
        CheckResult {
            id: id.into(),
            statement: statement.into(),
            status: Status::Pass,
            witness: None,
            note: None,
            elapsed_ms: 0,
        }
    }

    pub fn fail(id: impl Into<String>, statement: impl Into<String>, witness: impl Into<String>) -> Self {
        let mut w = witness.into();
        if w.is_empty() {
            w = "mismatch".into();
        }
        CheckResult { status: Status::Fail, witness: Some(w), ..Self::pass(id, statement) }
    }

    pub fn reconciled(id: impl Into<String>, statement: impl Into<String>, note: impl Into<String>) -> Self {
        CheckResult { status: Status::Reconciled, note: Some(note.into()), ..Self::pass(id, statement) }
    }

    /// PASS when `witness` is `None`, FAIL otherwise.
    pub fn from_witness(id: impl Into<String>, statement: impl Into<String>, witness: Option<String>) -> Self {
        match witness {
            None => Self::pass(id, statement),
            Some(w) => Self::fail(id, statement, w),
        }
    }

    pub fn is_pass(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn is_fail(&self) -> bool {
        self.status == Status::Fail
    }
}

/// Runs `f` and stores its wall time on the result when `record` is set.
pub fn timed(record: bool, f: impl FnOnce() -> CheckResult) -> CheckResult {
    let t = Instant::now();
    let mut r = f();
    if record {
        r.elapsed_ms = t.elapsed().as_millis() as u64;
    }
    r
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub reconciled: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub config: serde_json::Value,
    pub checks: Vec<CheckResult>,
    pub summary: Summary,
}

impl Report {
    /// Sorts checks by id and recomputes the summary.
    pub fn new(suite: impl Into<String>, config: serde_json::Value, mut checks: Vec<CheckResult>) -> Self {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        let mut summary = Summary::default();
        for c in &checks {
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Reconciled => summary.reconciled += 1,
            }
        }
        Report { suite: suite.into(), config, checks, summary }
    }

    pub fn ok(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.is_fail())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("suite {}\n", self.suite);
        for c in &self.checks {
            s.push_str(&format!("{:<10} {:<40} {}", c.status.to_string(), c.id, c.statement));
            if let Some(n) = &c.note {
                s.push_str(&format!("  [{}]", n));
            }
            if let Some(w) = &c.witness {
                s.push_str(&format!("\n           witness: {}", w));
            }
            s.push('\n');
        }
        s.push_str(&format!(
            "summary: pass={} fail={} reconciled={}\n",
            self.summary.pass, self.summary.fail, self.summary.reconciled
        ));
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report() {
        let r = Report::new("x", serde_json::json!({}), vec![]);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["checks"], serde_json::json!([]));
        assert_eq!(v["summary"], serde_json::json!({"pass": 0, "fail": 0, "reconciled": 0}));
    }

    #[test]
    fn summary_counts_statuses() {
        let r = Report::new(
            "x",
            serde_json::json!({}),
            vec![
                CheckResult::pass("b", "ok"),
                CheckResult::fail("a", "bad", ""),
                CheckResult::reconciled("c", "typo", "ledger"),
            ],
        );
        assert_eq!(r.summary, Summary { pass: 1, fail: 1, reconciled: 1 });
        assert_eq!(r.checks[0].id, "a");
        assert_eq!(r.checks[0].witness.as_deref(), Some("mismatch"));
        assert!(!r.ok());
        assert_eq!(r.to_text().lines().count(), 6);
    }
}
