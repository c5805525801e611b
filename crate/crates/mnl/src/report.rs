//! Machine-readable run reports.
//!
//! JSON reports carry `"schema": 1`; keys of the detail map are sorted, so
//! identical inputs give byte-identical output.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use mnl_core::CheckReport;
use serde::Serialize;
use serde_json::Value;

pub const SCHEMA: u32 = 1;

pub const EXIT_PASS: u8 = 0;
pub const EXIT_VIOLATION: u8 = 1;
pub const EXIT_INPUT: u8 = 2;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessEntry {
    pub indices: Vec<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckEntry {
    pub property: String,
    pub pass: bool,
    /// Whether the check decides the exit status.
    pub gating: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessEntry>,
}

impl CheckEntry {
    fn new(report: &CheckReport, gating: bool) -> Self {
        Self {
            property: report.property.clone(),
            pass: report.passed,
            gating,
            witness: report.witness.as_ref().map(|w| WitnessEntry {
                indices: w.indices.clone(),
                detail: w.detail.clone(),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub input: String,
    pub status: &'static str,
    pub checks: Vec<CheckEntry>,
    pub details: BTreeMap<String, Value>,
}

impl Report {
    pub fn new(command: &str, input: &str) -> Self {
        Self {
            schema: SCHEMA,
            command: command.into(),
            input: input.into(),
            status: "pass",
            checks: Vec::new(),
            details: BTreeMap::new(),
        }
    }

    /// Adds a check that decides the exit status.
    pub fn check(&mut self, report: &CheckReport) -> &mut Self {
        self.push(report, true)
    }

    /// Adds a check reported for information only.
    pub fn info(&mut self, report: &CheckReport) -> &mut Self {
        self.push(report, false)
    }

    fn push(&mut self, report: &CheckReport, gating: bool) -> &mut Self {
        self.checks.push(CheckEntry::new(report, gating));
        self.status = if self.passed() { "pass" } else { "violation" };
        self
    }

    pub fn detail(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        let value = serde_json::to_value(value).expect("report details serialize");
        self.details.insert(key.into(), value);
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().filter(|c| c.gating).all(|c| c.pass)
    }

    pub fn exit_code(&self) -> u8 {
        if self.passed() {
            EXIT_PASS
        } else {
            EXIT_VIOLATION
        }
    }

    pub fn check_named(&self, property: &str) -> Option<&CheckEntry> {
        self.checks.iter().find(|c| c.property == property)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.command, self.input);
        for c in &self.checks {
            let _ = write!(
                out,
                "  {}={}",
                c.property,
                if c.pass { "pass" } else { "fail" }
            );
            if let Some(w) = &c.witness {
                let _ = write!(out, " ({})", w.detail);
            }
            if !c.gating {
                out.push_str(" [info]");
            }
            out.push('\n');
        }
        for (key, value) in &self.details {
            let _ = writeln!(out, "  {key}: {}", text_value(value));
        }
        let _ = writeln!(out, "status: {}", self.status);
        out
    }
}

fn text_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let compact = v.to_string();
            if compact.len() <= 100 {
                compact
            } else {
                format!("[{} entries; use --format json]", items.len())
            }
        }
        other => other.to_string(),
    }
}
