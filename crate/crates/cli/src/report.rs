use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Debug, Serialize)]
pub struct Input {
    pub path: String,
    pub sha256: String,
}

/// Everything a subcommand emits. Without `--timing` the JSON form is a pure
/// function of the arguments and input bytes.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub inputs: Vec<Input>,
    pub bound: Option<u32>,
    pub results: Value,
    pub warnings: Vec<String>,
    /// Bounded computations contradicting a theorem.
    pub red_alerts: Vec<String>,
    /// Axioms or identities that failed with a witness.
    pub failures: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
    #[serde(skip)]
    pub text: Vec<String>,
}

impl Report {
    pub fn new(command: Vec<String>) -> Self {
        Report {
            command,
            inputs: Vec::new(),
            bound: None,
            results: Value::Null,
            warnings: Vec::new(),
            red_alerts: Vec::new(),
            failures: Vec::new(),
            timing_ms: None,
            text: Vec::new(),
        }
    }

    /// Reads a file and records its hash.
    pub fn read_input(&mut self, path: &Path) -> Result<String> {
        let bytes = std::fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
        self.inputs.push(Input {
            path: path.display().to_string(),
            sha256: hex(&Sha256::digest(&bytes)),
        });
        String::from_utf8(bytes).with_context(|| format!("{} is not UTF-8", path.display()))
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }

    pub fn exit_code(&self) -> u8 {
        if self.red_alerts.is_empty() && self.failures.is_empty() {
            0
        } else {
            2
        }
    }

    pub fn render(&self, json: bool) -> Result<String> {
        if json {
            return Ok(serde_json::to_string_pretty(self)? + "\n");
        }
        let mut out = String::new();
        for l in &self.text {
            out.push_str(l);
            out.push('\n');
        }
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        for f in &self.failures {
            out.push_str(&format!("FAILURE: {f}\n"));
        }
        for a in &self.red_alerts {
            out.push_str(&format!("RED ALERT: {a}\n"));
        }
        if let Some(ms) = self.timing_ms {
            out.push_str(&format!("elapsed: {ms} ms\n"));
        }
        Ok(out)
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}
