//! Sequence and parameter file formats.
//!
//! Sequences travel as CSV (one row, comma-separated) or JSON (flat array
//! of numbers). Parameter files are JSON objects with keys "r", "s", "t"
//! and optionally "p", each a flat array.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::types::{FiniteSequence, GeneralizedMeansParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequenceFormat {
    Csv,
    Json,
}

impl SequenceFormat {
    /// Picks the format from a file extension; anything but `.json` is CSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("json") => SequenceFormat::Json,
            _ => SequenceFormat::Csv,
        }
    }
}

/// Parses sequence text in the given format.
pub fn parse_sequence(text: &str, format: SequenceFormat) -> Result<FiniteSequence> {
    let raw: Vec<f64> = match format {
        SequenceFormat::Csv => {
            let mut values = Vec::new();
            for (index, field) in text.trim().split(',').enumerate() {
                let v: f64 = field
                    .trim()
                    .parse()
                    .map_err(|_| Error::ParseError { index })?;
                values.push(v);
            }
            values
        }
        SequenceFormat::Json => serde_json::from_str(text).map_err(|e| Error::ParseError {
            index: e.column().saturating_sub(1),
        })?,
    };
    FiniteSequence::new(raw)
}

/// Loads a sequence prefix from a file.
pub fn load_sequence(path: &Path, format: SequenceFormat) -> Result<FiniteSequence> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_sequence(&text, format)
}

/// Renders a sequence in the given format at full precision (the shortest
/// representation that round-trips through f64).
pub fn format_sequence(seq: &FiniteSequence, format: SequenceFormat) -> String {
    match format {
        SequenceFormat::Csv => seq
            .values()
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(","),
        SequenceFormat::Json => serde_json::to_string(seq.values()).expect("serialize"),
    }
}

/// On-disk parameter file: {"r": [...], "s": [...], "t": [...], "p": [...]}
/// with "p" optional.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ParamsFile {
    pub r: Vec<f64>,
    pub s: Vec<f64>,
    pub t: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<Vec<f64>>,
}

impl ParamsFile {
    pub fn from_params(params: &GeneralizedMeansParams) -> Self {
        Self {
            r: params.r().to_vec(),
            s: params.s().to_vec(),
            t: params.t().to_vec(),
            p: None,
        }
    }

    pub fn validate(&self) -> Result<GeneralizedMeansParams> {
        GeneralizedMeansParams::new(self.r.clone(), self.s.clone(), self.t.clone())
    }
}

/// Loads and validates a parameter file; the optional exponent prefix is
/// returned raw.
pub fn load_params(path: &Path) -> Result<(GeneralizedMeansParams, Option<Vec<f64>>)> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    let file: ParamsFile = serde_json::from_str(&text).map_err(|e| Error::InvalidJson {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let params = file.validate()?;
    Ok((params, file.p))
}
