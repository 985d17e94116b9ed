//! Append-only JSONL store for scan records.

use std::collections::HashSet;
use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;

use csection_core::groupspec::GroupSpec;
use csection_core::report::VerdictReport;
use csection_core::scan::ScanResult;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub spec: GroupSpec,
    pub label: String,
    pub reports: Vec<VerdictReport>,
    pub version: String,
    pub timestamp: String,
    pub complete: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl ScanRecord {
    pub fn from_result(r: ScanResult, timestamp: &str) -> Self {
        ScanRecord {
            complete: r.complete(),
            spec: r.spec,
            label: r.label,
            reports: r.reports,
            version: csection_core::report::VERSION.to_string(),
            timestamp: timestamp.to_string(),
            error: r.error,
        }
    }

    fn key(&self) -> (String, String) {
        (self.spec.to_json(), self.version.clone())
    }
}

/// Append the records whose (spec, version) is not already stored.
/// Returns how many were written.
pub fn append_new(path: &Path, records: &[ScanRecord]) -> io::Result<usize> {
    let mut seen = HashSet::new();
    if path.exists() {
        for (i, line) in BufReader::new(File::open(path)?).lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let rec: ScanRecord = serde_json::from_str(&line).map_err(|e| {
                io::Error::new(
                    io::ErrorKind::InvalidData,
                    format!("{}:{}: {e}", path.display(), i + 1),
                )
            })?;
            seen.insert(rec.key());
        }
    }
    let mut file = OpenOptions::new().create(true).append(true).open(path)?;
    let mut written = 0;
    for rec in records {
        if seen.insert(rec.key()) {
            writeln!(
                file,
                "{}",
                serde_json::to_string(rec).map_err(io::Error::other)?
            )?;
            written += 1;
        }
    }
    Ok(written)
}
