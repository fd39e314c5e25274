use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("no parseable records in {what} ({skipped} skipped)")]
    EmptyCorpus { what: String, skipped: usize },

    #[error("value {value} outside range [{min}, {max}]")]
    Range { value: f64, min: f64, max: f64 },

    #[error("snapshot validation failed, dangling or invalid ids: {}", .ids.join(", "))]
    Validation { ids: Vec<String> },

    #[error("schema version mismatch: found {found}, expected {expected}")]
    Schema { found: u32, expected: u32 },

    #[error("document is empty")]
    EmptyDocument,

    #[error("term {0:?} does not occur in the corpus")]
    UnknownTerm(String),

    #[error("document {0:?} is not part of the corpus")]
    UnknownDocument(String),

    #[error("review count must be at least 1")]
    ZeroReviews,

    #[error("at least one source aggregate is required")]
    NoSources,

    #[error("score {0} is not a member of the normalization pool")]
    NotInPool(f64),

    #[error("vector dimensions differ: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("vectors share no present coordinates")]
    NoSharedCoordinates,

    #[error("no usable neighbor for {hotel}/{feature}")]
    NoNeighbor { hotel: String, feature: String },

    #[error("unknown row or column {0:?}")]
    UnknownKey(String),

    #[error("{0} is undefined for empty denominators")]
    UndefinedMetric(&'static str),

    #[error("relevance oracle has no entry for query {0:?}")]
    OracleGap(String),

    #[error("sentiment lexicon is empty ({skipped} malformed lines)")]
    EmptyLexicon { skipped: usize },

    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
