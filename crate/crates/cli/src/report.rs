//! The JSON report written by every command.
//!
//! Keys are emitted in sorted order and no field depends on the worker
//! count or the clock (unless `--timing` is given), so equal inputs give
//! byte-identical files.

use std::fs;
use std::path::Path;

use finlab_core::ramsey::Exactness;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::args::Command;
use crate::error::{CliError, Result};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Outcome {
    Pass,
    Fail,
    /// Nothing exists to report, as expected (no triple, vacuous case).
    Absent,
    /// A budget or a finite pool ran out first.
    Inconclusive,
    Error,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass | Outcome::Absent => 0,
            Outcome::Fail => 1,
            Outcome::Error => 2,
            Outcome::Inconclusive => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: String,
    /// The command as resolved from flags and config, for re-running.
    pub command: Command,
    /// Which construction the check exercises.
    pub anchor: String,
    pub verdict: Outcome,
    pub result: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exactness: Option<Exactness>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

/// What a command hands back before it is wrapped into a [`Report`].
#[derive(Debug, Clone, PartialEq)]
pub struct Finding {
    pub anchor: &'static str,
    pub verdict: Outcome,
    pub result: Value,
    pub exactness: Option<Exactness>,
    pub notes: Vec<String>,
}

impl Finding {
    pub fn new(anchor: &'static str, verdict: Outcome, result: impl Serialize) -> Result<Self> {
        Ok(Finding {
            anchor,
            verdict,
            result: serde_json::to_value(result)?,
            exactness: None,
            notes: Vec::new(),
        })
    }

    pub fn exact(mut self, e: Exactness) -> Self {
        self.exactness = Some(e);
        self
    }

    pub fn note(mut self, msg: impl Into<String>) -> Self {
        self.notes.push(msg.into());
        self
    }

    pub fn into_report(self, command: Command) -> Report {
        Report {
            schema_version: SCHEMA_VERSION.into(),
            command,
            anchor: self.anchor.into(),
            verdict: self.verdict,
            result: self.result,
            exactness: self.exactness,
            notes: self.notes,
            timing_ms: None,
        }
    }
}

impl Report {
    /// Canonical text: sorted keys, two-space indent, trailing newline.
    pub fn to_json(&self) -> Result<String> {
        // `Value` keeps object keys in a sorted map
        let v = serde_json::to_value(self)?;
        let mut s = serde_json::to_string_pretty(&v)?;
        s.push('\n');
        Ok(s)
    }

    pub fn read(path: &Path) -> Result<Report> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let report: Report = serde_json::from_str(&text)?;
        if report.schema_version != SCHEMA_VERSION {
            return Err(CliError::Invalid(format!(
                "{}: schema version {} is not {SCHEMA_VERSION}",
                path.display(),
                report.schema_version
            )));
        }
        Ok(report)
    }
}

pub fn emit_report(r: &Report, path: Option<&Path>) -> Result<()> {
    let text = r.to_json()?;
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::io(p, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::args::FBoundArgs;

    fn sample() -> Report {
        Finding::new(
            "f-recursion",
            Outcome::Pass,
            serde_json::json!({"z": 1, "a": [2, 1]}),
        )
        .unwrap()
        .exact(Exactness::ExactFromTable)
        .into_report(Command::FBound(FBoundArgs {
            n: 1,
            k: 1,
            table_max: None,
        }))
    }

    #[test]
    fn keys_are_sorted_and_versioned() {
        let s = sample().to_json().unwrap();
        assert!(s.find("\"a\"").unwrap() < s.find("\"z\"").unwrap());
        assert!(s.find("\"anchor\"").unwrap() < s.find("\"verdict\"").unwrap());
        assert!(s.contains("\"schema_version\": \"1\""));
        assert!(s.contains("\"exactness\": \"exact-from-table\""));
    }

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.json");
        emit_report(&sample(), Some(&path)).unwrap();
        assert_eq!(Report::read(&path).unwrap(), sample());
        let missing = dir.path().join("none").join("r.json");
        let err = emit_report(&sample(), Some(&missing)).unwrap_err();
        assert!(err.to_string().contains("none"));
    }
}
