//! Serialization shared by every command.
//!
//! Exact values are written as `p/q` strings (integers without a
//! denominator); approximate matrix entries and CSV decimals carry 17
//! significant digits so they parse back to the same `f64`.

use std::fs;
use std::io::Write;
use std::path::Path;

use cesaro_core::matrices::Truncation;
use cesaro_core::{Rational, Scalar};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub fn decimal(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "NaN".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

/// JSON has no infinities; those become `null`.
pub fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

pub trait Entry {
    fn render(&self) -> String;
}

impl Entry for Rational {
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Entry for f64 {
    fn render(&self) -> String {
        decimal(*self)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixExport {
    pub name: String,
    pub n: usize,
    pub structure: String,
    pub exactness: String,
    /// Row-major.
    pub entries: Vec<Vec<String>>,
}

impl MatrixExport {
    pub fn new<T: Scalar + Entry>(m: &Truncation<T>) -> Self {
        MatrixExport {
            name: m.name.to_string(),
            n: m.size(),
            structure: m.structure.to_string(),
            exactness: format!("{:?}", m.exactness).to_lowercase(),
            entries: m.rows().map(|r| r.iter().map(Entry::render).collect()).collect(),
        }
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
        for row in &self.entries {
            w.write_record(row)?;
        }
        finish_csv(w)
    }
}

pub fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String, CliError> {
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Writes to `path` when given, otherwise to `out`.
pub fn emit(text: &str, path: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}
