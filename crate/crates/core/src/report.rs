//! Verification reports: every identity checker returns the expanded sides
//! it compared, not just a verdict, so a failure names its witness.

use std::fmt;

/// One equality that a verifier established (or failed to).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqualityCheck {
    pub label: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

impl EqualityCheck {
    /// Compare two values, keeping their rendered forms as the witness.
    pub fn compare<T: PartialEq + fmt::Display>(
        label: impl Into<String>,
        lhs: &T,
        rhs: &T,
    ) -> Self {
        EqualityCheck {
            label: label.into(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            pass: lhs == rhs,
        }
    }
}

/// Outcome of verifying one identity instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    /// What was verified, e.g. `thm4 n=3 j=2`.
    pub subject: String,
    pub checks: Vec<EqualityCheck>,
}

impl VerificationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        VerificationReport {
            subject: subject.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: EqualityCheck) {
        self.checks.push(check);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {}", self.subject)?;
        if !self.passed() {
            for check in self.checks.iter().filter(|c| !c.pass) {
                write!(f, "\n  {}: {} != {}", check.label, check.lhs, check.rhs)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_passes_only_when_all_checks_pass() {
        let mut report = VerificationReport::new("demo");
        report.push(EqualityCheck::compare("first", &1, &1));
        assert!(report.passed());
        report.push(EqualityCheck::compare("second", &1, &2));
        assert!(!report.passed());
        let text = report.to_string();
        assert!(text.starts_with("FAIL demo"));
        assert!(text.contains("second: 1 != 2"));
    }
}
