//! Versioned reports: a list of verdicts plus structured data, rendered as
//! plain text and as JSON. Rendering is deterministic: data keys are kept
//! sorted and nothing time-dependent is stored.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};

/// Bumped whenever the layout of either rendering changes.
pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Recorded for information; never affects the outcome.
    Info,
}

impl Status {
    fn tag(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "INFO",
        }
    }
}

/// One verdict, tagged with the notion it instantiates.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub instantiates: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub format: u32,
    pub command: String,
    pub checks: Vec<Check>,
    pub data: Map<String, Value>,
    #[serde(skip)]
    notes: Vec<String>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Report {
        Report {
            format: FORMAT_VERSION,
            command: command.into(),
            checks: vec![],
            data: Map::new(),
            notes: vec![],
        }
    }

    pub fn check(&mut self, name: &str, instantiates: &str, ok: bool, detail: impl Into<String>) -> bool {
        self.push(name, instantiates, if ok { Status::Pass } else { Status::Fail }, detail);
        ok
    }

    pub fn info(&mut self, name: &str, instantiates: &str, detail: impl Into<String>) {
        self.push(name, instantiates, Status::Info, detail);
    }

    fn push(&mut self, name: &str, instantiates: &str, status: Status, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            instantiates: instantiates.into(),
            status,
            detail: detail.into(),
        });
    }

    /// Free-form line for the text rendering only.
    pub fn note(&mut self, line: impl Into<String>) {
        self.notes.push(line.into());
    }

    /// Stores structured data under `key`.
    ///
    /// # Panics
    /// If `value` cannot be represented as JSON, which does not happen for
    /// the library's types.
    pub fn data<T: Serialize + ?Sized>(&mut self, key: &str, value: &T) {
        let v = serde_json::to_value(value).expect("report data serializes");
        self.data.insert(key.into(), v);
    }

    /// Appends the checks, data and notes of `other`, with check names prefixed.
    pub fn merge(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.name = format!("{prefix}: {}", c.name);
            self.checks.push(c);
        }
        if !other.data.is_empty() {
            self.data.insert(prefix.into(), Value::Object(other.data));
        }
        self.notes.extend(other.notes);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "gquot report, format {}", self.format);
        let _ = writeln!(s, "command: {}", self.command);
        for c in &self.checks {
            let _ = write!(s, "[{}] {} ({})", c.status.tag(), c.name, c.instantiates);
            if c.detail.is_empty() {
                s.push('\n');
            } else {
                let _ = writeln!(s, ": {}", c.detail);
            }
        }
        for n in &self.notes {
            let _ = writeln!(s, "{n}");
        }
        let _ = writeln!(s, "outcome: {}", if self.passed() { "pass" } else { "fail" });
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_and_merges() {
        let mut r = Report::new("demo");
        assert!(r.check("first", "good quotient", true, ""));
        r.info("count", "enumeration", "3 sets");
        r.data("zeta", &vec![1, 2]);
        r.data("alpha", "x");
        r.note("extra line");
        assert!(r.passed());
        let json = r.to_json();
        assert!(json.find("\"alpha\"").unwrap() < json.find("\"zeta\"").unwrap());
        let mut outer = Report::new("suite");
        let mut bad = Report::new("inner");
        bad.check("second", "saturation", false, "witness cone 0");
        outer.merge("part", r);
        outer.merge("other", bad);
        assert!(!outer.passed());
        assert_eq!(outer.failures().count(), 1);
        let text = outer.to_text();
        assert!(text.contains("[FAIL] other: second (saturation): witness cone 0"));
        assert!(text.contains("extra line"));
        assert!(text.ends_with("outcome: fail\n"));
    }
}
