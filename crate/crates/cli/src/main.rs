//! `finlab`: runs one check and writes a JSON report.
//!
//! Exit codes: 0 for PASS or ABSENT, 1 for FAIL, 2 for errors, 3 for
//! INCONCLUSIVE.

mod args;
mod commands;
mod config;
mod error;
mod report;
mod text;

use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;

use crate::args::Cli;
use crate::error::Result;
use crate::report::{emit_report, Outcome};

fn resolve_args(raw: &[String]) -> Result<(Vec<String>, Vec<config::Entry>)> {
    let (path, rest) = config::take_config_flag(raw)?;
    match path {
        Some(p) => {
            let entries = config::load(&p)?;
            Ok((config::merge(&rest, &entries), entries))
        }
        None => Ok((rest, Vec::new())),
    }
}

fn main() -> ExitCode {
    let raw: Vec<String> = std::env::args().skip(1).collect();
    let (argv, entries) = match resolve_args(&raw) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let cli = match Cli::try_parse_from(std::iter::once("finlab".to_string()).chain(argv)) {
        Ok(c) => c,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let msg = e.to_string();
            eprint!("{msg}");
            if let Some(line) = config::locate(&msg, &entries) {
                eprintln!("(introduced by config line {line})");
            }
            return ExitCode::from(2);
        }
    };
    let Some(command) = cli.command else {
        eprintln!("error: no command given; see `finlab --help`");
        return ExitCode::from(2);
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.workers)
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: worker pool: {e}");
            return ExitCode::from(2);
        }
    };
    let start = Instant::now();
    let finding = pool.install(|| commands::execute(&command));
    let mut report = finding.into_report(command);
    if cli.timing {
        report.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    if report.verdict == Outcome::Error {
        if let Some(msg) = report.result.get("error").and_then(|m| m.as_str()) {
            eprintln!("error: {msg}");
        }
    }
    if let Err(e) = emit_report(&report, cli.out.as_deref()) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(report.verdict.exit_code() as u8)
}
