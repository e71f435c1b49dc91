//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero entry in {seq} at index {index}")]
    ZeroEntry { seq: &'static str, index: usize },

    #[error("leading coefficient s_0 must be nonzero")]
    ZeroLeading,

    #[error("empty prefix for {seq}")]
    EmptyPrefix { seq: &'static str },

    #[error("non-finite value in {seq} at index {index}")]
    NonFiniteParam { seq: &'static str, index: usize },

    #[error("exponent at index {index} must be strictly positive and finite")]
    NonPositiveExponent { index: usize },

    #[error("parse error at entry {index}")]
    ParseError { index: usize },

    #[error("non-finite value at entry {index}")]
    NonFiniteValue { index: usize },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("invalid json in {path}: {message}")]
    InvalidJson { path: String, message: String },

    #[error("index out of range: n={n}, k={k}, truncation={truncation}")]
    IndexOutOfRange { n: usize, k: usize, truncation: usize },

    #[error("length mismatch: needed {needed}, available {available}")]
    LengthMismatch { needed: usize, available: usize },

    #[error("determinant oracle limited to n <= {max}, requested {requested}")]
    OracleSizeExceeded { requested: usize, max: usize },

    #[error("no bisection bracket found within 2^64 scale expansion")]
    NoBracket,

    #[error("input not on the modular unit sphere: sigma_p = {sigma}")]
    NotOnSphere { sigma: f64 },

    #[error("exponent p_{index} = {value} must exceed 1 for this functional")]
    ExponentNotAboveOne { index: usize, value: f64 },

    #[error("zero sequence not allowed here")]
    ZeroSequence,

    #[error("unknown condition id: {0}")]
    UnknownCondition(String),

    #[error("insufficient truncation: {rows} rows available, need at least {min}")]
    InsufficientTruncation { rows: usize, min: usize },

    #[error("alpha must lie strictly between 0 and 1, got {0}")]
    AlphaOutOfRange(f64),

    #[error("truncation {requested} exceeds factorial-safe limit {max}")]
    TruncationTooLarge { requested: usize, max: usize },

    #[error("unsupported source/target pair for map check: {from} -> {to}")]
    UnsupportedMapping { from: String, to: String },

    #[error("invalid matrix description: {0}")]
    InvalidMatrix(String),
}
