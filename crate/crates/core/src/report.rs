//! Check records collected by the verifiers.

use std::fmt;
use std::time::{Duration, Instant};

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub elapsed_ms: f64,
}

impl CheckRecord {
    /// `CHECK <name> <status> [witness=<w>]`
    pub fn summary_line(&self) -> String {
        match &self.witness {
            Some(w) if self.status == Status::Fail => {
                format!("CHECK {} {} witness={}", self.name, self.status, w)
            }
            _ => format!("CHECK {} {}", self.name, self.status),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Report {
    pub checks: Vec<CheckRecord>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn push(
        &mut self,
        name: impl Into<String>,
        status: Status,
        witness: Option<String>,
        note: Option<String>,
        elapsed: Duration,
    ) {
        self.checks.push(CheckRecord {
            name: name.into(),
            status,
            witness: witness.map(|w| compact(&w)),
            note,
            elapsed_ms: elapsed.as_secs_f64() * 1e3,
        });
    }

    /// Records PASS when `witness` is `None`, otherwise FAIL with the witness.
    pub fn record(&mut self, name: impl Into<String>, witness: Option<String>, started: Instant) {
        let status = if witness.is_some() {
            Status::Fail
        } else {
            Status::Pass
        };
        self.push(name, status, witness, None, started.elapsed());
    }

    pub fn record_with_note(
        &mut self,
        name: impl Into<String>,
        witness: Option<String>,
        note: Option<String>,
        started: Instant,
    ) {
        let status = if witness.is_some() {
            Status::Fail
        } else {
            Status::Pass
        };
        self.push(name, status, witness, note, started.elapsed());
    }

    pub fn skip(&mut self, name: impl Into<String>, note: impl Into<String>) {
        self.push(
            name,
            Status::Skipped,
            None,
            Some(note.into()),
            Duration::ZERO,
        );
    }

    pub fn merge(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    /// Prefixes every check name with `prefix/`.
    pub fn prefixed(mut self, prefix: &str) -> Report {
        for c in &mut self.checks {
            c.name = format!("{prefix}/{}", c.name);
        }
        self
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn get(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn status(&self, name: &str) -> Option<Status> {
        self.get(name).map(|c| c.status)
    }

    pub fn sort(&mut self) {
        self.checks.sort_by(|a, b| a.name.cmp(&b.name));
    }

    /// Summary lines sorted by check name.
    pub fn summary(&self) -> String {
        let mut lines: Vec<String> = self.checks.iter().map(CheckRecord::summary_line).collect();
        lines.sort();
        let mut out = lines.join("\n");
        out.push('\n');
        out
    }
}

/// Strips whitespace so a witness stays a single token.
fn compact(w: &str) -> String {
    w.split_whitespace().collect::<Vec<_>>().join("")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_is_sorted_and_compact() {
        let mut r = Report::new();
        let t = Instant::now();
        r.record("b", Some("tau_1(R) != R".into()), t);
        r.record("a", None, t);
        r.skip("c", "window");
        assert_eq!(
            r.summary(),
            "CHECK a PASS\nCHECK b FAIL witness=tau_1(R)!=R\nCHECK c SKIPPED\n"
        );
        assert!(!r.all_passed());
    }
}
