use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = MzvError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum MzvError {
    #[error("cannot parse index {input:?}: bad token {token:?}")]
    ParseIndex { input: String, token: String },

    #[error("cannot parse combination {input:?}: {reason}")]
    ParseCombination { input: String, reason: String },

    #[error("word {0} is not index-encodable (it must be empty or end in 1)")]
    NotIndexEncodable(String),

    #[error("index ({0}) is not admissible")]
    NotAdmissible(String),

    #[error("word {0} diverges at 0 (it must be empty or end in 1)")]
    DivergentWord(String),

    #[error("unknown product {0:?} (expected \"stuffle\" or \"shuffle\")")]
    UnknownProduct(String),

    #[error("cache file {path}: {source}")]
    CacheIo {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("cache file {path} is malformed: {source}")]
    CacheFormat {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },

    #[error("malformed cached value {value:?} for key {key:?}")]
    CacheValue { key: String, value: String },
}
