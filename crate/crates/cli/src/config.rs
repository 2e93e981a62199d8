//! Flat `key = value` configuration files.
//!
//! Each key names a long flag (`budget = 500` is `--budget 500`); `true`
//! turns a switch on and `false` leaves it off. The special key `command`
//! holds the subcommand path (`command = hindman schur-fs3`) and is used
//! only when none is given on the command line. Blank lines and lines
//! starting with `#` are ignored.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{CliError, Result};

pub const COMMANDS: [&str; 9] = [
    "ramsey",
    "f-bound",
    "schur",
    "fu-search",
    "hindman",
    "fm",
    "rado",
    "colour",
    "verify-report",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub key: String,
    pub value: String,
    pub line: usize,
}

pub fn parse(text: &str) -> Result<Vec<Entry>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let err = |msg: String| CliError::Config { line, msg };
        let (k, v) = t
            .split_once('=')
            .ok_or_else(|| err(format!("expected `key = value`, got `{t}`")))?;
        let key = k.trim().replace('_', "-");
        if key.is_empty() || !key.chars().all(|c| c.is_ascii_alphanumeric() || c == '-') {
            return Err(err(format!("bad key `{}`", k.trim())));
        }
        if !seen.insert(key.clone()) {
            return Err(err(format!("duplicate key `{key}`")));
        }
        let v = v.trim();
        let value = v
            .strip_prefix('"')
            .and_then(|s| s.strip_suffix('"'))
            .unwrap_or(v)
            .to_string();
        if key == "config" {
            return Err(err("config files cannot include other config files".into()));
        }
        out.push(Entry { key, value, line });
    }
    Ok(out)
}

pub fn load(path: &Path) -> Result<Vec<Entry>> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse(&text).map_err(|e| match e {
        CliError::Config { line, msg } => {
            CliError::Invalid(format!("{}:{line}: {msg}", path.display()))
        }
        other => other,
    })
}

/// Removes `--config PATH` / `--config=PATH` from the arguments.
pub fn take_config_flag(args: &[String]) -> Result<(Option<PathBuf>, Vec<String>)> {
    let mut path = None;
    let mut rest = Vec::with_capacity(args.len());
    let mut it = args.iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            let p = it
                .next()
                .ok_or_else(|| CliError::Invalid("--config needs a path".into()))?;
            path = Some(PathBuf::from(p));
        } else if let Some(p) = a.strip_prefix("--config=") {
            path = Some(PathBuf::from(p));
        } else {
            rest.push(a.clone());
        }
    }
    Ok((path, rest))
}

/// The argument list after applying config entries to `user`.
pub fn merge(user: &[String], entries: &[Entry]) -> Vec<String> {
    let has_command = user.iter().any(|a| COMMANDS.contains(&a.as_str()));
    let given = |flag: &str| {
        user.iter()
            .any(|a| a == flag || a.strip_prefix(flag).is_some_and(|r| r.starts_with('=')))
    };
    let mut out = Vec::new();
    if !has_command {
        if let Some(e) = entries.iter().find(|e| e.key == "command") {
            out.extend(e.value.split_whitespace().map(String::from));
        }
    }
    out.extend(user.iter().cloned());
    for e in entries.iter().filter(|e| e.key != "command") {
        let flag = format!("--{}", e.key);
        if given(&flag) {
            continue;
        }
        match e.value.as_str() {
            "true" => out.push(flag),
            "false" => {}
            v => {
                out.push(flag);
                out.push(v.to_string());
            }
        }
    }
    out
}

/// Points a parse error back at the config line that introduced the flag.
pub fn locate(message: &str, entries: &[Entry]) -> Option<usize> {
    entries
        .iter()
        .find(|e| e.key != "command" && message.contains(&format!("'--{}", e.key)))
        .map(|e| e.line)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strings(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn flags_win_over_file() {
        let entries =
            parse("# run\ncommand = hindman schur-fs3\nbound = 64\nsize=4\ntiming = false\n")
                .unwrap();
        let merged = merge(&strings(&["--size", "3"]), &entries);
        assert_eq!(
            merged,
            strings(&["hindman", "schur-fs3", "--size", "3", "--bound", "64"])
        );
        let merged = merge(
            &strings(&["ramsey", "--m=3"]),
            &parse("m = 4\nenumerate = true").unwrap(),
        );
        assert_eq!(merged, strings(&["ramsey", "--m=3", "--enumerate"]));
    }

    #[test]
    fn diagnostics_carry_lines() {
        let err = parse("m = 3\n\nnonsense\n").unwrap_err();
        assert_eq!(
            err.to_string(),
            "config line 3: expected `key = value`, got `nonsense`"
        );
        assert!(parse("m = 3\nm = 4")
            .unwrap_err()
            .to_string()
            .contains("line 2"));
        assert!(parse("bad key = 1").is_err());
        let entries = parse("m = 3\nwidth = 2").unwrap();
        assert_eq!(
            locate("unexpected argument '--width' found", &entries),
            Some(2)
        );
        assert_eq!(
            locate("invalid value '-1' for '--m <M>'", &entries),
            Some(1)
        );
    }

    #[test]
    fn config_flag_is_removed() {
        let (p, rest) =
            take_config_flag(&strings(&["ramsey", "--config=a.cfg", "--m", "3"])).unwrap();
        assert_eq!(p, Some(PathBuf::from("a.cfg")));
        assert_eq!(rest, strings(&["ramsey", "--m", "3"]));
        assert!(take_config_flag(&strings(&["--config"])).is_err());
    }
}
