//! Machine-readable run reports: named check rows with measured values and
//! thresholds, JSON-serializable, plus atomic file output for CSV/JSON.

use crate::Result;
use serde::{Deserialize, Serialize};
use std::io::Write;
use std::path::Path;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    Fail,
    ReportOnly,
}

/// One verification row: an asserted row carries both the measured value
/// and the threshold it was held against.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckRow {
    pub name: String,
    pub status: CheckStatus,
    pub measured: f64,
    pub threshold: Option<f64>,
}

impl CheckRow {
    /// Asserted row: pass iff measured ≤ threshold.
    pub fn bounded(name: impl Into<String>, measured: f64, threshold: f64) -> Self {
        CheckRow {
            name: name.into(),
            status: if measured.is_finite() && measured <= threshold {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            measured,
            threshold: Some(threshold),
        }
    }

    /// Asserted row: pass iff measured ≥ threshold.
    pub fn at_least(name: impl Into<String>, measured: f64, threshold: f64) -> Self {
        CheckRow {
            name: name.into(),
            status: if measured.is_finite() && measured >= threshold {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            measured,
            threshold: Some(threshold),
        }
    }

    /// Recorded constant, no assertion.
    pub fn recorded(name: impl Into<String>, measured: f64) -> Self {
        CheckRow { name: name.into(), status: CheckStatus::ReportOnly, measured, threshold: None }
    }

    pub fn passed(&self) -> bool {
        self.status != CheckStatus::Fail
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunReport {
    pub config: serde_json::Value,
    pub rows: Vec<CheckRow>,
    pub wall_ms: u128,
    pub version: String,
}

impl RunReport {
    pub fn new(config: serde_json::Value, rows: Vec<CheckRow>, wall_ms: u128) -> Self {
        RunReport { config, rows, wall_ms, version: env!("CARGO_PKG_VERSION").to_string() }
    }

    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed())
    }

    pub fn failures(&self) -> Vec<&CheckRow> {
        self.rows.iter().filter(|r| !r.passed()).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Fixed-format float for byte-stable CSV output.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.12e}")
}

/// Builds a CSV document with one header row.
pub fn csv_document(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Writes via a temporary file in the same directory plus rename, so
/// readers never observe a partial file.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    std::fs::create_dir_all(dir)?;
    let tmp = dir.join(format!(
        ".{}.tmp",
        path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "out".into())
    ));
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_semantics() {
        assert!(CheckRow::bounded("a", 1.0, 2.0).passed());
        assert!(!CheckRow::bounded("a", 3.0, 2.0).passed());
        assert!(!CheckRow::bounded("a", f64::NAN, 2.0).passed());
        assert!(CheckRow::at_least("b", 3.0, 2.0).passed());
        assert!(CheckRow::recorded("c", f64::INFINITY).passed());
    }

    #[test]
    fn report_roundtrip() {
        let rep = RunReport::new(
            serde_json::json!({"suite": "demo", "seed": 7}),
            vec![CheckRow::bounded("x", 0.5, 1.0)],
            42,
        );
        let parsed: RunReport = serde_json::from_str(&rep.to_json()).unwrap();
        assert!(parsed.all_passed());
        assert_eq!(parsed.rows.len(), 1);
    }

    #[test]
    fn atomic_write_roundtrip() {
        let dir = std::env::temp_dir().join("sixmoment-report-test");
        let path = dir.join("out.csv");
        let doc = csv_document(&["a", "b"], &[vec!["1".into(), "2".into()]]);
        write_atomic(&path, &doc).unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "a,b\n1,2\n");
        std::fs::remove_dir_all(&dir).ok();
    }
}
