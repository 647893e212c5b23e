//! Serializable verification records.

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, PartialOrd, Ord)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    /// `None` when the check could not be decided.
    pub pass: Option<bool>,
    pub details: Value,
    /// Which table or statement the expected value comes from.
    pub reference: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub target: String,
    pub checks: Vec<Check>,
    pub seed: u64,
    pub runtime_ms: u64,
    pub verdict: Verdict,
}

impl VerificationReport {
    pub fn new(target: impl Into<String>, seed: u64) -> Self {
        VerificationReport { target: target.into(), checks: Vec::new(), seed, runtime_ms: 0, verdict: Verdict::Pass }
    }

    pub fn check(&mut self, name: &str, pass: Option<bool>, details: Value, reference: &str) -> &mut Self {
        self.checks.push(Check { name: name.into(), pass, details, reference: reference.into() });
        self.verdict = self.compute_verdict();
        self
    }

    pub fn pass(&mut self, name: &str, pass: bool, details: Value, reference: &str) -> &mut Self {
        self.check(name, Some(pass), details, reference)
    }

    fn compute_verdict(&self) -> Verdict {
        if self.checks.iter().any(|c| c.pass == Some(false)) {
            Verdict::Fail
        } else if self.checks.iter().any(|c| c.pass.is_none()) {
            Verdict::Unknown
        } else {
            Verdict::Pass
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn failed_checks(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| c.pass != Some(true)).map(|c| c.name.as_str()).collect()
    }

    /// Pretty-printed JSON with a trailing newline; stable for fixed inputs.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn verdicts() {
        let mut r = VerificationReport::new("row", 0);
        assert_eq!(r.verdict, Verdict::Pass);
        r.pass("a", true, json!(null), "");
        assert!(r.passed());
        r.check("b", None, json!(null), "");
        assert_eq!(r.verdict, Verdict::Unknown);
        r.pass("c", false, json!(null), "");
        assert_eq!(r.verdict, Verdict::Fail);
        assert_eq!(r.failed_checks(), vec!["b", "c"]);
        assert!(r.to_json().contains("\"verdict\": \"fail\""));
    }
}
