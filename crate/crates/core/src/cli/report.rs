use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: &str = "rootdatum-report/1";

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Origin {
    /// A value stated in the literature.
    Literature,
    /// A value computed independently by another route.
    Computed,
    /// A property that must hold by definition.
    Trivial,
}

/// Expected or observed value of a check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Observed {
    Flag(bool),
    Count(i64),
    Group(Vec<i64>),
    Groups(Vec<Vec<i64>>),
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRow {
    pub datum: String,
    pub check: String,
    pub expected: Observed,
    pub observed: Observed,
    pub origin: Origin,
    pub passed: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<String>,
}

impl CheckRow {
    pub fn new(datum: &str, check: &str, expected: Observed, observed: Observed, origin: Origin) -> Self {
        let passed = expected == observed;
        CheckRow { datum: datum.into(), check: check.into(), expected, observed, origin, passed, witnesses: Vec::new() }
    }

    pub fn flag(datum: &str, check: &str, observed: bool, origin: Origin) -> Self {
        Self::new(datum, check, Observed::Flag(true), Observed::Flag(observed), origin)
    }

    pub fn with_witnesses(mut self, w: Vec<String>) -> Self {
        if !self.passed {
            self.witnesses = w;
        }
        self
    }

    pub fn line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        let show = |v: &Observed| serde_json::to_string(v).expect("value serializes");
        let mut s = format!("{status} [{}] {}: {}", self.datum, self.check, show(&self.observed));
        if !self.passed {
            s.push_str(&format!(" (expected {})", show(&self.expected)));
            for w in &self.witnesses {
                s.push_str(&format!("\n    witness: {w}"));
            }
        }
        s
    }
}

/// Output of one command.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub version: &'static str,
    pub command: String,
    pub inputs_digest: String,
    pub results: Vec<Value>,
    pub checks: Vec<CheckRow>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, u128>>,
}

impl Report {
    pub fn new(command: &str, inputs: &[String]) -> Self {
        let mut h = Sha256::new();
        h.update(command.as_bytes());
        for i in inputs {
            h.update([0u8]);
            h.update(i.as_bytes());
        }
        let inputs_digest = h.finalize().iter().map(|b| format!("{b:02x}")).collect();
        Report {
            schema: SCHEMA_VERSION,
            version: env!("CARGO_PKG_VERSION"),
            command: command.into(),
            inputs_digest,
            results: Vec::new(),
            checks: Vec::new(),
            passed: true,
            timings_ms: None,
        }
    }

    pub fn result<T: Serialize>(&mut self, value: &T) {
        self.results.push(serde_json::to_value(value).expect("result serializes"));
    }

    pub fn check(&mut self, row: CheckRow) {
        self.passed &= row.passed;
        self.checks.push(row);
    }

    pub fn extend(&mut self, rows: Vec<CheckRow>) {
        for r in rows {
            self.check(r);
        }
    }

    pub fn timing(&mut self, label: &str, ms: u128) {
        self.timings_ms.get_or_insert_with(BTreeMap::new).insert(label.into(), ms);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.command);
        for r in &self.results {
            out.push_str(&format!("{}\n", serde_json::to_string(r).expect("result serializes")));
        }
        for c in &self.checks {
            out.push_str(&c.line());
            out.push('\n');
        }
        if !self.checks.is_empty() {
            let failed = self.checks.iter().filter(|c| !c.passed).count();
            out.push_str(&format!("{} checks, {failed} failed\n", self.checks.len()));
        }
        if let Some(t) = &self.timings_ms {
            for (k, v) in t {
                out.push_str(&format!("time {k}: {v} ms\n"));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_depends_on_inputs() {
        let a = Report::new("compute out", &["x".into()]);
        let b = Report::new("compute out", &["y".into()]);
        assert_ne!(a.inputs_digest, b.inputs_digest);
        assert_eq!(a.inputs_digest, Report::new("compute out", &["x".into()]).inputs_digest);
    }

    #[test]
    fn failing_rows_fail_the_report() {
        let mut r = Report::new("verify", &[]);
        r.check(CheckRow::new("SU(2)", "H1", Observed::Group(vec![]), Observed::Group(vec![]), Origin::Computed));
        assert!(r.passed);
        r.check(CheckRow::flag("SU(2)", "section", false, Origin::Trivial).with_witnesses(vec!["w".into()]));
        assert!(!r.passed);
        assert!(r.to_text().contains("witness: w"));
    }
}
