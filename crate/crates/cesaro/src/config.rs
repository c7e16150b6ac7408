use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::CliError;

pub const DEFAULT_SEED: u64 = 0x5EED;
pub const DEFAULT_PRECISION_BITS: u32 = 256;
pub const PRECISION_ENV: &str = "CESARO_PRECISION_BITS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Everything a report needs to be reproduced. Unused parameters are omitted
/// from the serialized form.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub target: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub method: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub order: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lambda: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub alpha: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub grid: Option<String>,
    pub seed: u64,
    pub precision_bits: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub output: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub format: Option<Format>,
}

impl RunConfig {
    pub fn new(command: &str, seed: u64, precision_bits: u32) -> Self {
        RunConfig { command: command.into(), seed, precision_bits, ..Default::default() }
    }
}

/// Working precision for high-precision checks, from the environment.
pub fn precision_bits() -> Result<u32, CliError> {
    match std::env::var(PRECISION_ENV) {
        Err(_) => Ok(DEFAULT_PRECISION_BITS),
        Ok(v) => match v.trim().parse::<u32>() {
            Ok(b) if (53..=4096).contains(&b) => Ok(b),
            _ => Err(CliError::Invalid(format!("{PRECISION_ENV} must be an integer in 53..=4096, got {v:?}"))),
        },
    }
}
