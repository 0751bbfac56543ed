use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid UTF-8 in sample `{id}` at byte offset {offset}")]
    Decode { id: String, offset: usize },

    #[error("sample `{id}` is empty after removing control and format characters")]
    EmptySample { id: String },

    #[error("sample has no words; word statistics are undefined")]
    DegenerateStats,

    #[error("partition n={n}, shift={shift} of a {len}-character text contains no complete block")]
    EmptyPartition { n: usize, shift: usize, len: usize },

    #[error("invalid block parameters n={n}, shift={shift}: need n >= 1 and shift < n")]
    InvalidBlock { n: usize, shift: usize },

    #[error("interpolation needs at least 4 points, got {got}")]
    InsufficientData { got: usize },

    #[error("interpolation abscissae must be strictly increasing")]
    NonMonotoneAbscissae,

    #[error("conditional entropy never crosses zero for N in [1, {n_max}]")]
    NoCrossing { n_max: usize },

    #[error("block entropy profile too short: need n_max >= {need}, have {have}")]
    ProfileTooShort { need: usize, have: usize },

    #[error("equiprobability distance is absent")]
    AbsentEquiprobability,

    #[error("word length average must be positive, got {0}")]
    InvalidAlpha(f64),

    #[error("aggregate needs at least one sample")]
    EmptyCorpus,

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("manifest {path}: {message}")]
    Manifest { path: PathBuf, message: String },

    #[error("report bundle is incomplete: {}", .missing.join(", "))]
    IncompleteBundle { missing: Vec<String> },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
