//! Run configuration: sequence, field, budgets, output format and seed.

use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::Field;
use crate::word::RunSequence;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid config: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            _ => Err(format!("unknown output format {s:?}; expected csv or json")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Budgets {
    pub run_limit: u64,
    pub span_limit: usize,
    pub n_max: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            run_limit: 1_000_000,
            span_limit: 4_000_000,
            n_max: 2000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    pub spec: RunSequence,
    pub field: Field,
    pub budgets: Budgets,
    pub output: OutputFormat,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            spec: RunSequence::default(),
            field: Field::Rationals,
            budgets: Budgets::default(),
            output: OutputFormat::Csv,
            seed: 0,
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<RunConfig, ConfigError> {
        let config: RunConfig =
            serde_json::from_str(text).map_err(|e| ConfigError::Invalid(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<RunConfig, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        RunConfig::from_json(&text)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let b = &self.budgets;
        if b.run_limit == 0 || b.span_limit == 0 || b.n_max == 0 {
            return Err(ConfigError::Invalid("budgets must be positive".into()));
        }
        Ok(())
    }
}
