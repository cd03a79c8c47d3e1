//! Structured, machine-readable outcomes of verification campaigns.

use serde::Serialize;
use std::fmt::Write as _;

/// Aggregate of one named check over many instances.  Only the first
/// counterexample is retained; reruns with the same seed reproduce it.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub instances: u64,
    pub failures: u64,
    #[serde(rename = "firstCounterexample")]
    pub first_counterexample: Option<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            instances: 0,
            failures: 0,
            first_counterexample: None,
        }
    }

    /// Records one instance; the counterexample text is only rendered on
    /// the first failure.
    pub fn record(&mut self, ok: bool, counterexample: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failures += 1;
            if self.first_counterexample.is_none() {
                self.first_counterexample = Some(counterexample());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Full report of one verification command.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub alpha: u64,
    pub degree: u64,
    pub seed: u64,
    pub checks: Vec<CheckReport>,
    pub pass: bool,
}

impl RunReport {
    pub fn new(command: impl Into<String>, alpha: u64, degree: u64, seed: u64) -> Self {
        RunReport {
            command: command.into(),
            alpha,
            degree,
            seed,
            checks: Vec::new(),
            pass: true,
        }
    }

    pub fn push(&mut self, check: CheckReport) {
        self.pass &= check.passed();
        self.checks.push(check);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Line-oriented rendering with the same fields as the JSON form.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "command: {}\nalpha: {}\ndegree: {}\nseed: {}",
            self.command, self.alpha, self.degree, self.seed
        );
        for c in &self.checks {
            let _ = write!(
                out,
                "check {}: {}/{} passed",
                c.name,
                c.instances - c.failures,
                c.instances
            );
            match &c.first_counterexample {
                Some(ce) => {
                    let _ = writeln!(out, "; first counterexample: {ce}");
                }
                None => {
                    let _ = writeln!(out);
                }
            }
        }
        let _ = writeln!(out, "pass: {}", self.pass);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_aggregation() {
        let mut r = RunReport::new("verify x", 2, 1, 7);
        let mut c = CheckReport::new("alpha-check");
        c.record(true, || unreachable!());
        c.record(false, || "x = 3".into());
        c.record(false, || panic!("only first counterexample rendered"));
        r.push(c);
        assert!(!r.pass);
        let json = r.to_json();
        assert!(json.contains("\"firstCounterexample\": \"x = 3\""));
        let text = r.to_text();
        assert!(text.contains("check alpha-check: 1/3 passed; first counterexample: x = 3"));
        assert!(text.contains("pass: false"));
    }
}
