use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    fn label(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Skipped => "SKIP",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    pub detail: String,
}

/// Everything one invocation produced. Serialized through `serde_json::Value`
/// so object keys come out sorted.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: String,
    pub request: Value,
    pub artifacts: serde_json::Map<String, Value>,
    pub checks: Vec<Check>,
    pub verdict: Verdict,
    #[serde(skip)]
    summary: Vec<(String, String)>,
}

impl RunReport {
    pub fn new(command: &str, request: impl Serialize) -> Self {
        RunReport {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            request: serde_json::to_value(request).unwrap_or(Value::Null),
            artifacts: serde_json::Map::new(),
            checks: Vec::new(),
            verdict: Verdict::Pass,
            summary: Vec::new(),
        }
    }

    /// Stores a machine-readable artifact.
    pub fn artifact(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).unwrap_or(Value::Null);
        self.artifacts.insert(key.to_string(), v);
    }

    /// Adds a row to the human-readable summary table.
    pub fn line(&mut self, key: &str, value: impl ToString) {
        self.summary.push((key.to_string(), value.to_string()));
    }

    pub fn check(&mut self, name: impl Into<String>, verdict: Verdict, detail: impl Into<String>) {
        if verdict == Verdict::Fail {
            self.verdict = Verdict::Fail;
        }
        self.checks.push(Check {
            name: name.into(),
            verdict,
            detail: detail.into(),
        });
    }

    pub fn failed(&self) -> bool {
        self.verdict == Verdict::Fail
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| c.verdict == Verdict::Fail)
    }

    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("report serializes");
        let mut s = serde_json::to_string_pretty(&v).expect("value serializes");
        s.push('\n');
        s
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let width = self.summary.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in &self.summary {
            let _ = writeln!(out, "{k:<width$}  {v}");
        }
        if !self.checks.is_empty() {
            if !self.summary.is_empty() {
                out.push('\n');
            }
            let name_width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
            for c in &self.checks {
                let _ = writeln!(
                    out,
                    "{}  {:<name_width$}  {}",
                    c.verdict.label(),
                    c.name,
                    c.detail
                );
            }
        }
        let passed = self
            .checks
            .iter()
            .filter(|c| c.verdict == Verdict::Pass)
            .count();
        let failed = self
            .checks
            .iter()
            .filter(|c| c.verdict == Verdict::Fail)
            .count();
        let skipped = self.checks.len() - passed - failed;
        let _ = writeln!(
            out,
            "\n{}: {passed} passed, {failed} failed, {skipped} skipped",
            self.verdict.label()
        );
        if let Some(c) = self.first_failure() {
            let _ = writeln!(out, "first mismatch: {}: {}", c.name, c.detail);
        }
        out
    }
}

/// Rounds to nine decimals and clears negative zero so float output is
/// stable across platforms.
pub fn stable_float(x: f64) -> f64 {
    let r = (x * 1e9).round() / 1e9;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_keys_are_sorted_and_verdict_tracks_failures() {
        let mut r = RunReport::new("demo", serde_json::json!({"z": 1, "a": 2}));
        r.artifact("zeta", 1);
        r.artifact("alpha", 2);
        r.check("one", Verdict::Pass, "");
        assert!(!r.failed());
        r.check("two", Verdict::Fail, "bad");
        assert!(r.failed());
        let json = r.to_json();
        assert!(json.find("\"alpha\"").unwrap() < json.find("\"zeta\"").unwrap());
        assert!(json.find("\"artifacts\"").unwrap() < json.find("\"verdict\"").unwrap());
        assert!(r.to_table().contains("first mismatch: two: bad"));
    }

    #[test]
    fn stable_float_normalises() {
        assert_eq!(stable_float(-1e-12).to_bits(), 0.0f64.to_bits());
        assert_eq!(stable_float(2.9999999999), 3.0);
    }
}
