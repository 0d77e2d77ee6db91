//! Outcome of a verification check.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub check: String,
    pub passed: bool,
    /// Set for checks that test a conjectural statement rather than a theorem.
    pub empirical: bool,
    /// Named facts such as truncation parameters or ranks.
    pub facts: Vec<(String, String)>,
    /// One line per offending coefficient; empty on success.
    pub offending: Vec<String>,
}

impl CheckReport {
    pub fn new(check: &str) -> Self {
        CheckReport {
            check: check.to_string(),
            passed: true,
            empirical: false,
            facts: Vec::new(),
            offending: Vec::new(),
        }
    }

    pub fn fact(&mut self, name: &str, value: impl ToString) {
        self.facts.push((name.to_string(), value.to_string()));
    }

    pub fn fail(&mut self, line: impl ToString) {
        self.passed = false;
        self.offending.push(line.to_string());
    }

    /// Fold another report in as a sub-check.
    pub fn absorb(&mut self, other: CheckReport) {
        let prefix = other.check;
        for (k, v) in other.facts {
            self.facts.push((alloc::format!("{prefix}.{k}"), v));
        }
        for line in other.offending {
            self.fail(alloc::format!("{prefix}: {line}"));
        }
        self.passed &= other.passed;
        self.empirical |= other.empirical;
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        let tag = if self.empirical { " (empirical)" } else { "" };
        writeln!(f, "{status} {}{tag}", self.check)?;
        for (k, v) in &self.facts {
            writeln!(f, "  {k} = {v}")?;
        }
        for line in &self.offending {
            writeln!(f, "  ! {line}")?;
        }
        Ok(())
    }
}
