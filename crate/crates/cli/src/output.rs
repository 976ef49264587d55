//! Report envelope and rendering.

use std::time::{SystemTime, UNIX_EPOCH};

use clap::ValueEnum;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// One command's result in each output form.
pub struct Report {
    pub json: Value,
    pub csv: Option<String>,
    pub text: String,
}

impl Report {
    pub fn new(json: Value, csv: Option<String>, text: String) -> Self {
        Report { json, csv, text }
    }
}

/// Provenance attached to every report.
pub struct Envelope {
    pub command: &'static str,
    pub digest: String,
    pub seed: Option<u64>,
    pub deterministic: bool,
}

impl Envelope {
    pub fn new(command: &'static str, canonical_input: &str, seed: Option<u64>, deterministic: bool) -> Self {
        let digest = Sha256::digest(canonical_input.as_bytes());
        Envelope {
            command,
            digest: digest.iter().map(|b| format!("{b:02x}")).collect(),
            seed,
            deterministic,
        }
    }

    fn timestamp(&self) -> Option<u64> {
        if self.deterministic {
            return None;
        }
        SystemTime::now().duration_since(UNIX_EPOCH).ok().map(|d| d.as_secs())
    }

    pub fn render(&self, report: &Report, format: Format) -> String {
        match format {
            Format::Json => {
                let mut doc = json!({
                    "tool": "sn-spectral",
                    "version": env!("CARGO_PKG_VERSION"),
                    "command": self.command,
                    "input_sha256": self.digest,
                    "seed": self.seed,
                    "report": report.json,
                });
                if let Some(ts) = self.timestamp() {
                    doc["timestamp"] = json!(ts);
                }
                let mut out = serde_json::to_string_pretty(&doc).expect("JSON values always serialize");
                out.push('\n');
                out
            }
            Format::Csv => {
                let body = report.csv.as_deref().unwrap_or(&report.text);
                format!("{}{body}", self.comment_header())
            }
            Format::Text => format!("{}{}", self.comment_header(), report.text),
        }
    }

    fn comment_header(&self) -> String {
        let seed = self.seed.map_or_else(|| "none".to_string(), |s| s.to_string());
        let mut out = format!(
            "# sn-spectral {} command={} input_sha256={} seed={seed}",
            env!("CARGO_PKG_VERSION"),
            self.command,
            self.digest
        );
        if let Some(ts) = self.timestamp() {
            out.push_str(&format!(" timestamp={ts}"));
        }
        out.push('\n');
        out
    }
}
