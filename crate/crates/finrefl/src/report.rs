//! Command reports: a stable `key: value` text rendering and a JSON one.

use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub command: String,
    /// `(path, sha256 hex)` of every file read.
    pub inputs: Vec<(String, String)>,
    pub results: Map<String, Value>,
    pub warnings: Vec<String>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report { command: command.into(), ..Default::default() }
    }

    pub fn input(&mut self, path: &Path, bytes: &[u8]) {
        self.inputs.push((path.display().to_string(), sha256_hex(bytes)));
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.results.insert(key.to_string(), value.into());
    }

    pub fn warn(&mut self, msg: impl Into<String>) {
        self.warnings.push(msg.into());
    }

    pub fn to_json(&self) -> Value {
        let inputs: Vec<Value> = self.inputs.iter().map(|(p, h)| json!({ "path": p, "sha256": h })).collect();
        json!({
            "command": self.command,
            "inputs": inputs,
            "results": Value::Object(self.results.clone()),
            "warnings": self.warnings,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        out.push_str("inputs:");
        if self.inputs.is_empty() {
            out.push_str(" none");
        }
        out.push('\n');
        for (p, h) in &self.inputs {
            let _ = writeln!(out, "  {p}: sha256:{h}");
        }
        out.push_str("results:\n");
        for (k, v) in &self.results {
            let _ = writeln!(out, "  {k}: {}", scalar(v));
        }
        out.push_str("warnings:");
        if self.warnings.is_empty() {
            out.push_str(" none");
        }
        out.push('\n');
        for w in &self.warnings {
            let _ = writeln!(out, "  - {w}");
        }
        out
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string_pretty(&self.to_json()).expect("values serialize");
            s.push('\n');
            s
        } else {
            self.to_text()
        }
    }
}

/// Strings print bare; everything else prints as compact JSON.
fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
