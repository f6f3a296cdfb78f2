use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input at row {row}, column {col}: value is not finite")]
    NonFinite { row: usize, col: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("insufficient sample: {available} observations, need more than k = {k}")]
    InsufficientSample { available: usize, k: usize },

    #[error("degenerate sample: {0}")]
    Degenerate(String),

    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("digamma domain error: argument {0} is not positive")]
    Domain(f64),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("invalid simulator spec: {0}")]
    InvalidSpec(String),

    #[error("estimation failed at lag {lag}: {source}")]
    AtLag {
        lag: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("estimation failed for factor `{factor}` -> target `{target}`: {source}")]
    AtPair {
        factor: String,
        target: String,
        #[source]
        source: Box<Error>,
    },

    #[error("missing column `{0}`")]
    MissingColumn(String),

    #[error("unparseable datetime `{value}` at data row {row}")]
    Datetime { value: String, row: usize },

    #[error("sampling gap between {before} and {after}")]
    Gap { before: String, after: String },

    #[error("window {0} selects no rows")]
    EmptyWindow(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("schema: {0}")]
    Schema(String),
}

impl Error {
    /// True when the failure comes from the data being numerically
    /// unusable (ties, constant columns) rather than from bad input.
    pub fn is_degenerate(&self) -> bool {
        match self {
            Error::Degenerate(_) => true,
            Error::AtLag { source, .. } | Error::AtPair { source, .. } => source.is_degenerate(),
            _ => false,
        }
    }

    /// True for malformed or too-short files, schemas, or datasets.
    pub fn is_input(&self) -> bool {
        match self {
            Error::MissingColumn(_)
            | Error::Datetime { .. }
            | Error::Gap { .. }
            | Error::EmptyWindow(_)
            | Error::Io { .. }
            | Error::Csv(_)
            | Error::Schema(_)
            | Error::NonFinite { .. }
            | Error::InvalidInput(_)
            | Error::InsufficientSample { .. } => true,
            Error::AtLag { source, .. } | Error::AtPair { source, .. } => source.is_input(),
            _ => false,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
