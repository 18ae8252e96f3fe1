use std::path::Path;

use serde::Serialize;

use super::config::RunConfig;
use crate::error::{Error, Result};
use crate::linalg::{to_pairs, CMat};

pub const SCHEMA_VERSION: u32 = 1;

/// Envelope of every JSON report.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Report<T: Serialize> {
    pub schema_version: u32,
    pub command: String,
    pub config: RunConfig,
    pub warnings: Vec<String>,
    pub result: T,
}

impl<T: Serialize> Report<T> {
    pub fn new(command: &str, config: &RunConfig, warnings: Vec<String>, result: T) -> Self {
        Report { schema_version: SCHEMA_VERSION, command: command.into(), config: config.clone(), warnings, result }
    }

    pub fn to_json(&self, compact: bool) -> Result<String> {
        Ok(if compact { serde_json::to_string(self)? } else { serde_json::to_string_pretty(self)? })
    }
}

/// Row-major `[re, im]` pairs.
pub type MatrixOut = Vec<Vec<[f64; 2]>>;

pub fn matrix_out(m: &CMat) -> MatrixOut {
    to_pairs(m)
}

pub fn write_file(path: &str, contents: &str) -> Result<()> {
    std::fs::write(Path::new(path), contents).map_err(|source| Error::Io { path: path.into(), source })
}
