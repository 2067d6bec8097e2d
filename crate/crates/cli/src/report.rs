//! Report envelope and the content-addressed cache.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::outcome::Outcome;

pub const CACHE_ENV: &str = "DIAMFREE_CACHE_DIR";
const DEFAULT_CACHE_DIR: &str = ".diamfree-cache";

#[derive(Debug, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    /// Settings that can change the result. Thread count is not one of them.
    pub config: Value,
    pub input_hash: String,
    pub key: String,
    pub outcome: Outcome,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn cache_key(command: &str, config: &Value, input_hash: &str) -> String {
    let material = serde_json::json!({
        "version": diamfree::VERSION,
        "command": command,
        "config": config,
        "input_hash": input_hash,
    });
    sha256_hex(material.to_string().as_bytes())
}

pub fn cache_dir() -> PathBuf {
    std::env::var_os(CACHE_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR))
}

pub fn to_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

fn entry(dir: &Path, key: &str) -> PathBuf {
    dir.join(format!("{key}.json"))
}

/// A stored report for `key`, if one parses.
pub fn load(dir: &Path, key: &str) -> Option<Report> {
    let text = fs::read_to_string(entry(dir, key)).ok()?;
    let report: Report = serde_json::from_str(&text).ok()?;
    (report.key == key).then_some(report)
}

/// Writes through a temporary file so a reader never sees half a report.
pub fn store(dir: &Path, report: &Report) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    let target = entry(dir, &report.key);
    let tmp = dir.join(format!(".{}.tmp", report.key));
    fs::write(&tmp, to_json(report))?;
    fs::rename(tmp, target)
}
