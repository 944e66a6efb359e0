use std::fmt::{self, Write as _};
use std::time::Duration;

use lformal_core::Violation;
use serde::{Serialize, Serializer};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
    Rejected,
    FormalUpTo(usize),
    NonFormal,
}

impl Status {
    /// Process exit code: 1 for FAIL, 3 for NON-FORMAL, 0 otherwise.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Fail => 1,
            Status::NonFormal => 3,
            _ => 0,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Pass => f.write_str("PASS"),
            Status::Fail => f.write_str("FAIL"),
            Status::Inconclusive => f.write_str("INCONCLUSIVE"),
            Status::Rejected => f.write_str("REJECTED"),
            Status::FormalUpTo(n) => write!(f, "FORMAL-UP-TO-{n}"),
            Status::NonFormal => f.write_str("NON-FORMAL"),
        }
    }
}

impl Serialize for Status {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Row {
    pub args: Vec<String>,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Finding {
    Value { name: String, value: String },
    Violation(Violation),
    Table { name: String, rows: Vec<Row> },
    Certificate { name: String, payload: serde_json::Value },
    Note { text: String },
}

impl Finding {
    pub fn value(name: impl Into<String>, value: impl ToString) -> Self {
        Finding::Value { name: name.into(), value: value.to_string() }
    }

    pub fn note(text: impl Into<String>) -> Self {
        Finding::Note { text: text.into() }
    }

    pub fn certificate(name: impl Into<String>, payload: &impl Serialize) -> Self {
        Finding::Certificate {
            name: name.into(),
            payload: serde_json::to_value(payload).expect("certificates serialize"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub input: String,
    pub status: Status,
    pub summary: String,
    pub findings: Vec<Finding>,
    #[serde(skip)]
    pub timing: Duration,
}

#[derive(Serialize)]
struct Timed<'a> {
    #[serde(flatten)]
    report: &'a Report,
    timing_ms: f64,
}

impl Report {
    pub fn new(command: &str, input: &str, status: Status, summary: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            input: input.into(),
            status,
            summary: summary.into(),
            findings: Vec::new(),
            timing: Duration::ZERO,
        }
    }

    pub fn with(mut self, findings: impl IntoIterator<Item = Finding>) -> Self {
        self.findings.extend(findings);
        self
    }

    pub fn violations(self, v: &[Violation]) -> Self {
        self.with(v.iter().cloned().map(Finding::Violation))
    }

    /// JSON without timing; identical across runs on the same input.
    pub fn findings_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_json(&self) -> String {
        let timed = Timed { report: self, timing_ms: self.timing.as_secs_f64() * 1e3 };
        serde_json::to_string_pretty(&timed).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}: {}\n", self.command, self.input, self.status);
        if !self.summary.is_empty() {
            let _ = writeln!(out, "  {}", self.summary);
        }
        for f in &self.findings {
            match f {
                Finding::Value { name, value } => {
                    let _ = writeln!(out, "  {name}: {value}");
                }
                Finding::Violation(v) => {
                    let _ = writeln!(out, "  violated: {v}");
                }
                Finding::Table { name, rows } => {
                    let _ = writeln!(out, "  {name}:");
                    if rows.is_empty() {
                        let _ = writeln!(out, "    (zero)");
                    }
                    for r in rows {
                        let _ = writeln!(out, "    ({}) -> {}", r.args.join(", "), r.value);
                    }
                }
                Finding::Certificate { name, payload } => {
                    let body = serde_json::to_string_pretty(payload).expect("json");
                    let _ = writeln!(out, "  {name}:");
                    for line in body.lines() {
                        let _ = writeln!(out, "    {line}");
                    }
                }
                Finding::Note { text } => {
                    let _ = writeln!(out, "  note: {text}");
                }
            }
        }
        let _ = writeln!(out, "  time: {:.1} ms", self.timing.as_secs_f64() * 1e3);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn statuses_render_as_documented() {
        assert_eq!(Status::FormalUpTo(5).to_string(), "FORMAL-UP-TO-5");
        assert_eq!(serde_json::to_string(&Status::NonFormal).unwrap(), "\"NON-FORMAL\"");
    }

    #[test]
    fn only_fail_and_non_formal_exit_nonzero() {
        let all = [
            Status::Pass,
            Status::Fail,
            Status::Inconclusive,
            Status::Rejected,
            Status::FormalUpTo(3),
            Status::NonFormal,
        ];
        let nonzero: Vec<_> = all.iter().filter(|s| s.exit_code() != 0).collect();
        assert_eq!(nonzero, [&Status::Fail, &Status::NonFormal]);
    }

    #[test]
    fn timing_stays_out_of_findings() {
        let mut r = Report::new("validate", "x", Status::Pass, "");
        r.timing = Duration::from_millis(5);
        assert!(!r.findings_json().contains("timing"));
        assert!(r.to_json().contains("timing_ms"));
    }
}
