use serde::Serialize;
use serde_json::Value;

use crate::config::RunConfig;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Worst observed value of the checked quantity.
    pub residual: Option<f64>,
    /// Threshold it was compared against.
    pub margin: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    /// Passes when `residual <= margin`; NaN fails.
    pub fn bound(name: impl Into<String>, residual: f64, margin: f64) -> Self {
        Self {
            name: name.into(),
            passed: residual <= margin,
            residual: Some(residual),
            margin: Some(margin),
            detail: None,
        }
    }

    pub fn flag(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            residual: None,
            margin: None,
            detail: Some(detail.into()),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub config: Value,
    pub checks: Vec<Check>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

impl Report {
    pub fn new(command: &str, config: Value) -> Self {
        Self {
            command: command.into(),
            config,
            checks: Vec::new(),
            pass: true,
            result: None,
            warnings: Vec::new(),
            wall_time_ms: None,
        }
    }

    pub fn for_config(command: &str, cfg: &RunConfig) -> Self {
        Self::new(
            command,
            serde_json::to_value(cfg).expect("config serializes"),
        )
    }

    pub fn push(&mut self, check: Check) {
        self.pass &= check.passed;
        self.checks.push(check);
    }

    pub fn warn(&mut self, message: impl Into<String>) {
        self.warnings.push(message.into());
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
