use std::path::Path;

use finlab_core::hindman::ViolationReport;
use serde_json::json;

use super::{execute, fm};
use crate::args::Command;
use crate::error::{CliError, Result};
use crate::report::{Finding, Outcome, Report};

/// Re-checks a saved report: `fm` witnesses are replayed on their own,
/// any other command is re-run and must reproduce verdict and result.
pub fn verify_report(path: &Path) -> Result<Finding> {
    let saved = Report::read(path)?;
    let (replayed, mut ok) = match &saved.command {
        Command::VerifyReport(_) => {
            return Err(CliError::Invalid(
                "verification reports are not re-verified".into(),
            ))
        }
        Command::Fm(_)
            if saved.verdict != Outcome::Error && saved.verdict != Outcome::Inconclusive =>
        {
            let (replayed, agrees) = fm::replay(&saved.result)?;
            (replayed, agrees && replayed == saved.verdict)
        }
        cmd => {
            let again = execute(cmd);
            let same = again.verdict == saved.verdict
                && again.result == saved.result
                && again.exactness == saved.exactness;
            (again.verdict, same)
        }
    };
    if let Some(v) = saved.result.get("violation") {
        let v: ViolationReport = serde_json::from_value(v.clone())?;
        ok &= v.reverify();
    }
    let verdict = if ok { Outcome::Pass } else { Outcome::Fail };
    Finding::new(
        "report-replay",
        verdict,
        json!({
            "checked": saved.command.name(),
            "recorded": saved.verdict,
            "replayed": replayed,
        }),
    )
}
