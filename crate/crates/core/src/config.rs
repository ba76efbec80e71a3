//! Plain-text run configuration: one `key = value` per line, `#` comments.
//!
//! Keys are command-line flag names without the leading dashes (underscores
//! and dashes are interchangeable). Flags given on the command line win over
//! the file.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConfigFile {
    pub entries: Vec<(String, String)>,
}

fn normalize_key(k: &str) -> String {
    k.trim().replace('_', "-")
}

pub fn parse_config(text: &str) -> Result<ConfigFile> {
    let mut entries: Vec<(String, String)> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| {
            Error::Parse(format!(
                "config line {}: expected 'key = value', got '{raw}'",
                n + 1
            ))
        })?;
        let key = normalize_key(k);
        if key.is_empty() || key.contains(char::is_whitespace) {
            return Err(Error::Parse(format!(
                "config line {}: bad key '{}'",
                n + 1,
                k.trim()
            )));
        }
        if key == "config" {
            return Err(Error::Parse(format!(
                "config line {}: config files cannot include other config files",
                n + 1
            )));
        }
        let value = v.trim().trim_matches('"').to_string();
        // a repeated key keeps its last value
        entries.retain(|(k, _)| *k != key);
        entries.push((key, value));
    }
    Ok(ConfigFile { entries })
}

pub fn read_config(path: &Path) -> Result<ConfigFile> {
    parse_config(&std::fs::read_to_string(path)?)
}

impl ConfigFile {
    pub fn get(&self, key: &str) -> Option<&str> {
        let key = normalize_key(key);
        self.entries
            .iter()
            .find(|(k, _)| *k == key)
            .map(|(_, v)| v.as_str())
    }

    /// Command-line form of the entries, skipping keys in `present`.
    /// `true` turns into a bare switch and `false` drops the entry.
    pub fn to_flags(&self, present: &[String]) -> Vec<String> {
        let mut out = Vec::new();
        for (k, v) in &self.entries {
            if present.iter().any(|p| p == k) {
                continue;
            }
            match v.as_str() {
                "true" => out.push(format!("--{k}")),
                "false" => {}
                _ => {
                    out.push(format!("--{k}"));
                    out.push(v.clone());
                }
            }
        }
        out
    }
}

/// Fully resolved settings of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    pub settings: BTreeMap<String, serde_json::Value>,
}

impl RunConfig {
    pub fn from_args<T: Serialize>(command: &str, args: &T) -> Result<Self> {
        let value = serde_json::to_value(args)?;
        let settings = match value {
            serde_json::Value::Object(map) => map.into_iter().collect(),
            other => BTreeMap::from([("value".to_string(), other)]),
        };
        Ok(RunConfig {
            command: command.to_string(),
            settings,
        })
    }

    pub fn insert(&mut self, key: &str, value: impl Serialize) {
        if let Ok(v) = serde_json::to_value(value) {
            self.settings.insert(key.to_string(), v);
        }
    }

    /// `key = value` text that can be fed back through `--config`. Unset
    /// options are written as comments.
    pub fn to_kv_text(&self) -> String {
        let mut out = format!("# zetanet {}\n", self.command);
        for (k, v) in &self.settings {
            let key = k.replace('_', "-");
            let _ = match v {
                serde_json::Value::Null => writeln!(out, "# {key} ="),
                serde_json::Value::String(s) => writeln!(out, "{key} = {s}"),
                serde_json::Value::Array(items) => {
                    let parts: Vec<String> = items
                        .iter()
                        .map(|i| {
                            i.as_str()
                                .map(String::from)
                                .unwrap_or_else(|| i.to_string())
                        })
                        .collect();
                    writeln!(out, "{key} = {}", parts.join(","))
                }
                other => writeln!(out, "{key} = {other}"),
            };
        }
        out
    }
}
