use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::path::Path;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The check could not be evaluated; counts as a failure.
    Diagnostic,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub value: Option<f64>,
    pub tolerance: Option<f64>,
    pub runtime_s: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub command: String,
    pub scenario: String,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn new(command: &str, scenario: &str) -> Self {
        Self { command: command.into(), scenario: scenario.into(), checks: Vec::new() }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    /// Runs `f` and records `value ≤ tolerance`. Diagnostic and domain errors
    /// become a diagnostic entry; any other error aborts the run.
    pub fn check(&mut self, name: &str, tolerance: f64, f: impl FnOnce() -> Result<f64>) -> Result<()> {
        self.check_with(name, Some(tolerance), || f().map(|v| (v, v <= tolerance)))
    }

    /// Like `check`, with a caller-supplied verdict.
    pub fn check_with(&mut self, name: &str, tolerance: Option<f64>, f: impl FnOnce() -> Result<(f64, bool)>) -> Result<()> {
        let start = Instant::now();
        let outcome = f();
        let runtime_s = start.elapsed().as_secs_f64();
        let (status, value, detail) = match outcome {
            Ok((v, ok)) if ok && v.is_finite() => (Status::Pass, Some(v), None),
            Ok((v, _)) => (Status::Fail, v.is_finite().then_some(v), None),
            Err(e @ (Error::Diagnostic(_) | Error::Domain(_))) => (Status::Diagnostic, None, Some(e.to_string())),
            Err(e) => return Err(e),
        };
        self.checks.push(CheckResult { name: name.into(), status, value, tolerance, runtime_s, detail });
        Ok(())
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        write_json(path, self)
    }

    pub fn print(&self) {
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Diagnostic => "DIAG",
            };
            let fmt = |v: Option<f64>| v.map_or_else(|| "-".to_string(), |v| format!("{v:.3e}"));
            let detail = c.detail.as_deref().map(|d| format!("  ({d})")).unwrap_or_default();
            println!("{tag} {:<18} value={} tol={}{detail}", c.name, fmt(c.value), fmt(c.tolerance));
        }
    }
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}
