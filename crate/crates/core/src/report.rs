//! Report data model shared by all engines.
//!
//! One schema for every suite: a report is `{version, config, items[],
//! timings}` where each item is `{id, kind, status, result, detail{}}`.
//! The body (everything except `timings`) is deterministic for a fixed
//! config and crate version; wall-clock data lives only in the envelope.

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// Established result; a failure is an implementation bug by definition.
    Proved,
    /// Open statement under systematic test; a failure is a finding.
    Conjecture,
    /// Established elsewhere and verified here identically.
    Quoted,
    /// Tabulated output with no pass/fail semantics.
    Diagnostic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckResult {
    Pass,
    Fail,
    Excluded,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ItemKind {
    Identity,
    Recurrence,
    Series,
    Congruence,
    Sequence,
    Diagnostic,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Item {
    pub id: String,
    pub kind: ItemKind,
    pub status: Status,
    pub result: CheckResult,
    pub detail: Value,
}

impl Item {
    pub fn new(id: impl Into<String>, kind: ItemKind, status: Status, result: CheckResult) -> Self {
        Item { id: id.into(), kind, status, result, detail: Value::Object(Default::default()) }
    }

    pub fn with_detail(mut self, detail: Value) -> Self {
        self.detail = detail;
        self
    }
}

/// Envelope data excluded from the deterministic body.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Timings {
    pub timestamp: String,
    pub wall_ms: u128,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub config: Value,
    pub items: Vec<Item>,
    pub timings: Timings,
}

impl Report {
    pub fn new(config: Value, items: Vec<Item>) -> Self {
        Report { version: crate::VERSION.to_string(), config, items, timings: Timings::default() }
    }

    /// The deterministic portion: identical config and version give
    /// byte-identical output regardless of worker count.
    pub fn body_json(&self) -> String {
        #[derive(Serialize)]
        struct Body<'a> {
            version: &'a str,
            config: &'a Value,
            items: &'a [Item],
        }
        serde_json::to_string_pretty(&Body {
            version: &self.version,
            config: &self.config,
            items: &self.items,
        })
        .expect("report body serialization")
    }

    /// Counts of (fails among proved, fails among conjectures).
    pub fn fail_counts(&self) -> (usize, usize) {
        let proved = self
            .items
            .iter()
            .filter(|i| i.result == CheckResult::Fail && matches!(i.status, Status::Proved | Status::Quoted))
            .count();
        let conj = self
            .items
            .iter()
            .filter(|i| i.result == CheckResult::Fail && i.status == Status::Conjecture)
            .count();
        (proved, conj)
    }
}

/// Truncate a decimal string for text output; JSON always carries it whole.
pub fn truncate_digits(s: &str, limit: usize) -> String {
    let digits = s.chars().filter(|c| c.is_ascii_digit()).count();
    if digits <= limit {
        return s.to_string();
    }
    let mut out = String::new();
    let mut kept = 0;
    for c in s.chars() {
        if c.is_ascii_digit() {
            if kept == limit {
                break;
            }
            kept += 1;
        }
        out.push(c);
    }
    out.push_str(&format!("…({digits} digits)"));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn body_excludes_timings() {
        let mut r = Report::new(serde_json::json!({"suite": "proved"}), vec![]);
        let a = r.body_json();
        r.timings = Timings { timestamp: "now".into(), wall_ms: 123 };
        assert_eq!(a, r.body_json());
    }

    #[test]
    fn truncation() {
        assert_eq!(truncate_digits("12345", 60), "12345");
        let long = "9".repeat(100);
        let t = truncate_digits(&long, 60);
        assert!(t.starts_with(&"9".repeat(60)));
        assert!(t.ends_with("…(100 digits)"));
        assert_eq!(truncate_digits("-1.5e-3", 60), "-1.5e-3");
    }
}
