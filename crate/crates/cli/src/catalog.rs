//! JSONL catalog of certified polytopes, one entry per line.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use latfree::egyptian::EgyptianTuple;
use latfree::exactgeom::polytope::{bigint_json, json_bigint};
use latfree::verify::{verify_certificate_json, Certificate};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::{CliError, CliResult, EXIT_CATALOG};

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry {
    pub d_source: usize,
    pub tuple: EgyptianTuple,
    pub certificate: Value,
    pub timestamp: String,
    pub tool_version: String,
}

impl CatalogEntry {
    pub fn new(a: &EgyptianTuple, cert: &Certificate) -> CatalogEntry {
        CatalogEntry {
            d_source: a.len(),
            tuple: a.clone(),
            certificate: cert.to_json(),
            timestamp: chrono::Utc::now().to_rfc3339(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "d_source": self.d_source,
            "tuple": self.tuple.components().iter().map(bigint_json).collect::<Vec<_>>(),
            "certificate": self.certificate,
            "timestamp": self.timestamp,
            "tool_version": self.tool_version,
        })
    }

    /// Parses and fully re-verifies one catalog line.
    pub fn verify_line(line: &str) -> Result<CatalogEntry, String> {
        let v: Value = serde_json::from_str(line).map_err(|e| format!("not valid JSON: {e}"))?;
        let field = |k: &str| v.get(k).ok_or_else(|| format!("missing field {k:?}"));
        if field("schema_version")?.as_u64() != Some(SCHEMA_VERSION) {
            return Err(format!(
                "unsupported schema_version {}",
                field("schema_version")?
            ));
        }
        let tuple = field("tuple")?
            .as_array()
            .ok_or("tuple must be an array")?
            .iter()
            .map(json_bigint)
            .collect::<latfree::Result<Vec<BigInt>>>()
            .and_then(EgyptianTuple::new)
            .map_err(|e| format!("tuple: {e}"))?;
        let d_source = field("d_source")?
            .as_u64()
            .ok_or("d_source must be an integer")?;
        if d_source != tuple.len() as u64 {
            return Err(format!(
                "d_source {d_source} does not match the tuple length {}",
                tuple.len()
            ));
        }
        let certificate = field("certificate")?.clone();
        if certificate.get("a") != Some(field("tuple")?) {
            return Err("certificate is for a different tuple".into());
        }
        verify_certificate_json(&certificate).map_err(|e| e.to_string())?;
        let text = |k: &str| -> Result<String, String> {
            Ok(field(k)?
                .as_str()
                .ok_or(format!("{k} must be a string"))?
                .to_string())
        };
        let timestamp = text("timestamp")?;
        chrono::DateTime::parse_from_rfc3339(&timestamp).map_err(|e| format!("timestamp: {e}"))?;
        Ok(CatalogEntry {
            d_source: tuple.len(),
            tuple,
            certificate,
            timestamp,
            tool_version: text("tool_version")?,
        })
    }
}

/// Appends `entries` in the given order with a single write.
pub fn append(path: &Path, entries: &[CatalogEntry]) -> CliResult {
    let mut buf = String::new();
    for e in entries {
        buf.push_str(&e.to_json().to_string());
        buf.push('\n');
    }
    OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .and_then(|mut f| f.write_all(buf.as_bytes()))
        .map_err(|e| CliError::io(path, e))
}

/// Verifies every non-blank line; returns the entry count.
pub fn verify_file(path: &Path) -> CliResult<usize> {
    let f = File::open(path).map_err(|e| CliError::io(path, e))?;
    let mut n = 0;
    for (i, line) in BufReader::new(f).lines().enumerate() {
        let line = line.map_err(|e| CliError::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        n += 1;
        CatalogEntry::verify_line(&line).map_err(|why| {
            let what = serde_json::from_str::<Value>(&line)
                .ok()
                .and_then(|v| v.get("tuple").map(Value::to_string))
                .unwrap_or_else(|| "?".into());
            CliError::new(
                EXIT_CATALOG,
                format!(
                    "{}:{}: entry {n} (tuple {what}): {why}",
                    path.display(),
                    i + 1
                ),
            )
        })?;
    }
    Ok(n)
}
