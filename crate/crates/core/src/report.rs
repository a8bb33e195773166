//! Structured results of scenarios and suites.

use std::fmt;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

/// Witnesses kept per failing check; the failure count is always exact.
const MAX_WITNESSES: usize = 5;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub failures: usize,
    pub detail: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Value>,
}

impl Check {
    /// A single-case check.
    pub fn single(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            passed,
            cases: 1,
            failures: usize::from(!passed),
            detail: detail.into(),
            witnesses: Vec::new(),
        }
    }

    /// A check whose hypotheses did not hold; it runs no cases.
    pub fn skipped(name: impl Into<String>, reason: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            passed: true,
            cases: 0,
            failures: 0,
            detail: format!("not applicable: {}", reason.into()),
            witnesses: Vec::new(),
        }
    }

    /// An aggregate check, filled case by case.
    pub fn aggregate(name: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            passed: true,
            cases: 0,
            failures: 0,
            detail: String::new(),
            witnesses: Vec::new(),
        }
    }

    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> Value) {
        self.cases += 1;
        if !ok {
            self.passed = false;
            self.failures += 1;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(witness());
            }
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Check {
        self.detail = detail.into();
        self
    }

    pub fn with_witness(mut self, witness: Value) -> Check {
        self.witnesses.push(witness);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema: u32,
    pub name: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub params: Vec<(String, String)>,
    pub passed: bool,
    pub cases: usize,
    pub failures: usize,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Report {
        Report {
            schema: SCHEMA_VERSION,
            name: name.into(),
            params: Vec::new(),
            passed: true,
            cases: 0,
            failures: 0,
            checks: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Report {
        self.params.push((key.to_string(), value.to_string()));
        self
    }

    pub fn push(&mut self, check: Check) {
        self.passed &= check.passed;
        self.cases += check.cases;
        self.failures += check.failures;
        self.checks.push(check);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn extend(&mut self, other: Report) {
        for mut c in other.checks {
            c.name = format!("{}: {}", other.name, c.name);
            self.push(c);
        }
        self.notes.extend(other.notes);
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        for (k, v) in &self.params {
            write!(f, " {k}={v}")?;
        }
        writeln!(f)?;
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            write!(f, "  {tag} {}", c.name)?;
            if c.cases > 1 {
                write!(f, " ({}/{})", c.cases - c.failures, c.cases)?;
            }
            if !c.detail.is_empty() {
                write!(f, ": {}", c.detail)?;
            }
            writeln!(f)?;
            for w in &c.witnesses {
                writeln!(f, "      witness: {w}")?;
            }
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        let verdict = if self.passed { "passed" } else { "FAILED" };
        write!(f, "{verdict}: {} cases, {} failures", self.cases, self.failures)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aggregation() {
        let mut r = Report::new("demo");
        let mut c = Check::aggregate("law");
        for k in 0..10 {
            c.record(k != 3, || serde_json::json!({ "k": k }));
        }
        r.push(c);
        r.push(Check::single("one", true, "ok"));
        assert!(!r.passed);
        assert_eq!((r.cases, r.failures), (11, 1));
        assert!(r.to_json().contains("\"schema\": 1"));
        assert!(r.to_string().contains("FAIL law (9/10)"));
    }
}
