use std::fmt;

use crate::lattice::LatticeVector;

/// Outcome of a batch check: counts plus witnesses for anything that failed
/// or could not be evaluated.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub checked: usize,
    pub passed: usize,
    pub skipped: Vec<Skip>,
    pub violations: Vec<CheckViolation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Skip {
    pub witness: Option<LatticeVector>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckViolation {
    pub check: String,
    pub level: Option<usize>,
    pub witness: Option<LatticeVector>,
    pub detail: String,
}

impl CheckViolation {
    pub fn new(check: &str, detail: impl Into<String>) -> Self {
        CheckViolation {
            check: check.to_string(),
            level: None,
            witness: None,
            detail: detail.into(),
        }
    }

    pub fn at_level(mut self, level: usize) -> Self {
        self.level = Some(level);
        self
    }

    pub fn with_witness(mut self, witness: LatticeVector) -> Self {
        self.witness = Some(witness);
        self
    }
}

impl fmt::Display for CheckViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.check)?;
        if let Some(level) = self.level {
            write!(f, " level {level}:")?;
        }
        write!(f, " {}", self.detail)?;
        if let Some(w) = &self.witness {
            write!(f, " (witness {w})")?;
        }
        Ok(())
    }
}

impl CheckReport {
    pub fn pass(&mut self) {
        self.checked += 1;
        self.passed += 1;
    }

    pub fn fail(&mut self, violation: CheckViolation) {
        self.checked += 1;
        self.violations.push(violation);
    }

    pub fn skip(&mut self, witness: Option<LatticeVector>, reason: impl Into<String>) {
        self.skipped.push(Skip {
            witness,
            reason: reason.into(),
        });
    }

    /// Records a pass or a failure.
    pub fn record(&mut self, ok: bool, violation: impl FnOnce() -> CheckViolation) {
        if ok {
            self.pass();
        } else {
            self.fail(violation());
        }
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.checked += other.checked;
        self.passed += other.passed;
        self.skipped.extend(other.skipped);
        self.violations.extend(other.violations);
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}
