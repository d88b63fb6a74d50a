use serde::Serialize;
use serde_json::Value;
use toric_towers::report::CheckReport;
use toric_towers::LatticeVector;

use crate::error::exit;
use crate::verify::Outcome;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Violations,
    ResourceExhausted,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => exit::OK,
            Status::Violations => exit::VIOLATIONS,
            Status::ResourceExhausted => exit::RESOURCE,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub checked: usize,
    pub passed: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ViolationRecord {
    pub check: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkipRecord {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    pub reason: String,
}

/// The machine-readable result of one command.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub seed: Option<String>,
    pub status: Status,
    pub counts: Counts,
    pub violations: Vec<ViolationRecord>,
    pub skipped: Vec<SkipRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

pub fn vector_strings(v: &LatticeVector) -> Vec<String> {
    v.entries().iter().map(|x| x.to_string()).collect()
}

impl Report {
    pub fn new(command: Vec<String>, seed: Option<u64>) -> Self {
        Report {
            command,
            seed: seed.map(|s| s.to_string()),
            status: Status::Ok,
            counts: Counts::default(),
            violations: Vec::new(),
            skipped: Vec::new(),
            result: None,
            timing_ms: None,
        }
    }

    pub fn with_result(mut self, result: Value) -> Self {
        self.result = Some(result);
        self
    }

    pub fn with_checks(mut self, report: CheckReport) -> Self {
        self.absorb(Outcome::from(report));
        self
    }

    pub fn absorb(&mut self, outcome: Outcome) {
        let r = outcome.report;
        self.counts.checked += r.checked;
        self.counts.passed += r.passed;
        self.counts.skipped += r.skipped.len();
        self.violations
            .extend(r.violations.into_iter().map(|v| ViolationRecord {
                check: v.check,
                level: v.level,
                witness: v.witness.as_ref().map(vector_strings),
                detail: v.detail,
            }));
        self.skipped
            .extend(r.skipped.into_iter().map(|s| SkipRecord {
                witness: s.witness.as_ref().map(vector_strings),
                reason: s.reason,
            }));
        self.status = if !self.violations.is_empty() {
            Status::Violations
        } else if outcome.resource_exhausted > 0 || self.status == Status::ResourceExhausted {
            Status::ResourceExhausted
        } else {
            Status::Ok
        };
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use toric_towers::report::CheckViolation;

    #[test]
    fn violations_outrank_resource_caps() {
        let mut report = Report::new(vec!["verify".into()], Some(3));
        report.absorb(Outcome {
            report: CheckReport::default(),
            resource_exhausted: 1,
        });
        assert_eq!(report.status, Status::ResourceExhausted);
        assert_eq!(report.status.exit_code(), exit::RESOURCE);
        let mut failing = CheckReport::default();
        failing.fail(
            CheckViolation::new("x", "broken").with_witness(LatticeVector::from_i64s(&[1, -2])),
        );
        report.absorb(failing.into());
        assert_eq!(report.status, Status::Violations);
        assert_eq!(report.status.exit_code(), exit::VIOLATIONS);
        assert!(report.to_json().contains("\"-2\""));
        report.absorb(CheckReport::default().into());
        assert_eq!(report.status, Status::Violations);
    }
}
