//! `--config FILE`: `key=value` lines turned into long flags.
//!
//! The flags are inserted right after the subcommand name, before the flags
//! given on the command line, and the parser lets later occurrences win, so
//! explicit flags take precedence. `key=true` becomes `--key`, `key=false`
//! is dropped, and anything else becomes `--key value`.

use std::ffi::OsString;
use std::fs;

use anyhow::{anyhow, bail, Context, Result};

fn config_path(args: &[OsString]) -> Result<Option<(usize, usize, OsString)>> {
    for (k, a) in args.iter().enumerate() {
        let s = a.to_string_lossy();
        if s == "--config" {
            let v = args
                .get(k + 1)
                .ok_or_else(|| anyhow!("--config needs a file"))?;
            return Ok(Some((k, 2, v.clone())));
        }
        if let Some(v) = s.strip_prefix("--config=") {
            return Ok(Some((k, 1, v.into())));
        }
    }
    Ok(None)
}

/// Parses `key=value` lines (`#` comments, blank lines allowed).
pub fn parse_config(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| anyhow!("config line {}: expected key=value", k + 1))?;
        let key = key.trim().replace('_', "-");
        if key.is_empty() || key.starts_with('-') {
            bail!("config line {}: bad key `{key}`", k + 1);
        }
        out.push((key, value.trim().to_string()));
    }
    Ok(out)
}

/// Removes `--config FILE` from `args` and splices the file's flags in after
/// the subcommand.
pub fn expand_args(mut args: Vec<OsString>) -> Result<Vec<OsString>> {
    let Some((at, len, path)) = config_path(&args)? else {
        return Ok(args);
    };
    args.drain(at..at + len);
    let text = fs::read_to_string(&path)
        .with_context(|| format!("reading config {}", path.to_string_lossy()))?;
    let mut flags = Vec::new();
    for (key, value) in parse_config(&text)? {
        match value.as_str() {
            "true" => flags.push(OsString::from(format!("--{key}"))),
            "false" => {}
            _ => {
                flags.push(OsString::from(format!("--{key}")));
                flags.push(OsString::from(value));
            }
        }
    }
    // The subcommand is the first argument after the program name that is
    // not a flag.
    let sub = args
        .iter()
        .skip(1)
        .position(|a| !a.to_string_lossy().starts_with('-'))
        .map(|p| p + 2)
        .ok_or_else(|| anyhow!("--config given without a subcommand"))?;
    args.splice(sub..sub, flags);
    Ok(args)
}
