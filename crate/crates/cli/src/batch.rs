use std::path::PathBuf;

use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::pipeline::{run, InputSource, RunConfig, RunMode};
use crate::prime::DEFAULT_PRIME_CEILING;
use crate::CliError;

/// One line of a batch file. Exactly one of `poly`, `file`, `frobenius`.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BatchItem {
    pub poly: Option<String>,
    pub file: Option<PathBuf>,
    pub frobenius: Option<PathBuf>,
    pub mode: Option<RunMode>,
    #[serde(default)]
    pub tensor: bool,
    pub p: Option<u64>,
    pub precision: Option<u32>,
    pub char_bound: Option<u64>,
    #[serde(default)]
    pub vanilla: bool,
    #[serde(default)]
    pub recheck: bool,
    pub emit_frobenius: Option<PathBuf>,
    pub prime_ceiling: Option<u64>,
}

impl BatchItem {
    pub fn into_config(self) -> Result<RunConfig, CliError> {
        let source = match (self.poly, self.file, self.frobenius) {
            (Some(s), None, None) => InputSource::Poly(s),
            (None, Some(f), None) => InputSource::File(f),
            (None, None, Some(f)) => InputSource::Frobenius(f),
            _ => return Err(CliError::BadInput("exactly one of poly, file, frobenius is required".into())),
        };
        let mode = resolve_mode(self.mode, self.tensor)?;
        let mut cfg = RunConfig::new(source);
        cfg.mode = mode;
        cfg.p = self.p;
        cfg.precision_bound = self.precision.unwrap_or(cfg.precision_bound);
        cfg.char_bound = self.char_bound.unwrap_or(cfg.char_bound);
        cfg.vanilla = self.vanilla;
        cfg.recheck = self.recheck;
        cfg.emit_frobenius = self.emit_frobenius;
        cfg.prime_ceiling = self.prime_ceiling.unwrap_or(DEFAULT_PRIME_CEILING);
        Ok(cfg)
    }
}

/// `tensor` is shorthand for mode tensor and conflicts with other modes.
pub fn resolve_mode(mode: Option<RunMode>, tensor: bool) -> Result<Option<RunMode>, CliError> {
    match (mode, tensor) {
        (m, false) => Ok(m),
        (None | Some(RunMode::Tensor), true) => Ok(Some(RunMode::Tensor)),
        (Some(m), true) => Err(CliError::BadInput(format!("--tensor conflicts with mode {m:?}"))),
    }
}

fn run_line(line: &str) -> Result<Value, CliError> {
    let item: BatchItem = serde_json::from_str(line).map_err(|e| CliError::BadInput(e.to_string()))?;
    Ok(run(&item.into_config()?)?.to_json())
}

/// Runs every nonblank, non-comment line in parallel. Output keeps input
/// order; a failed item becomes {"error", "exit_code", "line"}.
pub fn run_batch(text: &str) -> Vec<Result<Value, (usize, CliError)>> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    lines.par_iter().map(|&(n, l)| run_line(l).map_err(|e| (n, e))).collect()
}

pub fn batch_line_json(r: &Result<Value, (usize, CliError)>) -> Value {
    match r {
        Ok(v) => v.clone(),
        Err((n, e)) => json!({ "error": e.to_string(), "exit_code": e.exit_code(), "line": n }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn item_needs_one_source() {
        let both = BatchItem { poly: Some("x".into()), file: Some("f".into()), ..Default::default() };
        assert_eq!(both.into_config().unwrap_err().exit_code(), 2);
        let none = BatchItem::default();
        assert!(none.into_config().is_err());
    }

    #[test]
    fn failures_stay_in_their_line() {
        let text = "# comment\n{\"poly\": \"x^4 + y^4 + z^4 + w^4\", \"p\": 33}\n\n{\"bogus\": 1}\n";
        let out = run_batch(text);
        assert_eq!(out.len(), 2);
        let j: Vec<Value> = out.iter().map(batch_line_json).collect();
        assert_eq!(j[0]["exit_code"], 2);
        assert_eq!(j[0]["line"], 2);
        assert_eq!(j[1]["line"], 4);
    }

    #[test]
    fn tensor_flag_and_mode() {
        assert_eq!(resolve_mode(None, true).unwrap(), Some(RunMode::Tensor));
        assert!(resolve_mode(Some(RunMode::Surface), true).is_err());
        assert_eq!(resolve_mode(Some(RunMode::Jacobian), false).unwrap(), Some(RunMode::Jacobian));
    }
}
