use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::catkit::{LawReport, Violation};

pub const REPORT_SCHEMA: &str = "glens/v1/report";

/// How many violations of one check are printed.
pub const MAX_COUNTEREXAMPLES: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub status: Status,
    pub checks: usize,
    pub violations: usize,
    pub counterexamples: Vec<Violation>,
}

impl CheckEntry {
    pub fn from_laws(name: impl Into<String>, report: &LawReport) -> Self {
        Self {
            name: name.into(),
            status: if report.is_pass() { Status::Pass } else { Status::Fail },
            checks: report.checks,
            violations: report.violations.len(),
            counterexamples: report.violations.iter().take(MAX_COUNTEREXAMPLES).cloned().collect(),
        }
    }

    pub fn passed(name: impl Into<String>, checks: usize) -> Self {
        Self {
            name: name.into(),
            status: Status::Pass,
            checks,
            violations: 0,
            counterexamples: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ErrorKind {
    Parse,
    Semantic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ErrorEntry {
    pub kind: ErrorKind,
    pub message: String,
}

/// The canonical body of a command's output. Wall time is not part of it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub schema: &'static str,
    pub command: String,
    pub status: Status,
    pub checks: Vec<CheckEntry>,
    pub counts: Map<String, Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Map::is_empty")]
    pub data: Map<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorEntry>,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            schema: REPORT_SCHEMA,
            command: command.into(),
            status: Status::Pass,
            checks: Vec::new(),
            counts: Map::new(),
            notes: Vec::new(),
            data: Map::new(),
            error: None,
        }
    }

    pub fn push(&mut self, entry: CheckEntry) {
        if entry.status != Status::Pass && self.status == Status::Pass {
            self.status = Status::Fail;
        }
        self.checks.push(entry);
    }

    pub fn count(&mut self, key: &str, value: usize) {
        self.counts.insert(key.to_string(), value.into());
    }

    pub fn datum(&mut self, key: &str, value: impl Serialize) {
        let value = serde_json::to_value(value).expect("report data serializes");
        self.data.insert(key.to_string(), value);
    }

    pub fn fail_with(&mut self, kind: ErrorKind, message: impl Into<String>) {
        self.status = Status::Error;
        self.error = Some(ErrorEntry {
            kind,
            message: message.into(),
        });
    }

    pub fn exit_code(&self) -> u8 {
        match (&self.status, &self.error) {
            (Status::Pass, _) => 0,
            (_, Some(ErrorEntry { kind: ErrorKind::Parse, .. })) => 2,
            _ => 1,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.schema);
        let _ = writeln!(out, "command: {}", self.command);
        let _ = writeln!(out, "status: {}", status_word(self.status));
        for c in &self.checks {
            let _ = writeln!(
                out,
                "check {}: {} ({} checks, {} violations)",
                c.name,
                status_word(c.status),
                c.checks,
                c.violations
            );
            for v in &c.counterexamples {
                let _ = writeln!(out, "  counterexample: {v}");
            }
        }
        for (k, v) in &self.counts {
            let _ = writeln!(out, "count {k}: {v}");
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        for (k, v) in &self.data {
            let _ = writeln!(out, "{k}: {}", text_value(v));
        }
        if let Some(e) = &self.error {
            let kind = match e.kind {
                ErrorKind::Parse => "parse",
                ErrorKind::Semantic => "semantic",
            };
            let _ = writeln!(out, "error ({kind}): {}", e.message);
        }
        out
    }
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Error => "error",
    }
}

/// Integer lists print as `0,1,2`; anything else as compact JSON.
fn text_value(v: &Value) -> String {
    match v {
        Value::Array(items) if items.iter().all(Value::is_u64) => items
            .iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(","),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
