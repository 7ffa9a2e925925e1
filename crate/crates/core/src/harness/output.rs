use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
    Markdown,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "md" => Ok(Format::Markdown),
            other => Err(Error::Invalid(format!(
                "unknown format {other:?}; expected csv, json or md"
            ))),
        }
    }
}

/// Per-row verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// Matches the expected value.
    Pass,
    /// Differs from the expected value.
    Mismatch,
    /// Computed, nothing to compare against.
    Ok,
    /// Could not be computed.
    Error,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Mismatch => "mismatch",
            Status::Ok => "ok",
            Status::Error => "error",
        })
    }
}

/// One output line: `ring,n,kind,target,method,value,expected,status`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Row {
    pub ring: String,
    pub n: u32,
    pub kind: String,
    pub target: String,
    pub method: String,
    pub value: String,
    pub expected: String,
    pub status: Status,
}

impl Row {
    pub fn is_failure(&self) -> bool {
        matches!(self.status, Status::Mismatch | Status::Error)
    }
}

pub fn render(rows: &[Row], format: Format) -> Result<String> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in rows {
                w.serialize(row)
                    .map_err(|e| Error::Invalid(e.to_string()))?;
            }
            if rows.is_empty() {
                w.write_record([
                    "ring", "n", "kind", "target", "method", "value", "expected", "status",
                ])
                .map_err(|e| Error::Invalid(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Invalid(e.to_string()))?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
        Format::Json => Ok(serde_json::to_string_pretty(rows)? + "\n"),
        Format::Markdown => {
            let mut out = String::from(
                "| ring | n | kind | target | method | value | expected | status |\n\
                 |---|---:|---|---|---|---:|---:|---|\n",
            );
            for r in rows {
                out.push_str(&format!(
                    "| `{}` | {} | {} | {} | {} | {} | {} | {} |\n",
                    r.ring.replace('|', "\\|"),
                    r.n,
                    r.kind,
                    r.target,
                    r.method,
                    r.value,
                    r.expected,
                    r.status
                ));
            }
            Ok(out)
        }
    }
}
