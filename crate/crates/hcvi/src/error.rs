use thiserror::Error;

/// Error type used by operations in this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dataset is empty")]
    EmptyDataset,
    #[error("cannot fit a hyper-ball over an empty point set")]
    EmptyBall,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("non-finite coordinate at point {row}, dimension {col}")]
    NonFinite { row: usize, col: usize },
    #[error("member id {id} out of bounds for a dataset of {len} points")]
    MemberOutOfBounds { id: usize, len: usize },
    #[error("{path}:{row}:{col}: {message}")]
    Csv {
        path: String,
        row: usize,
        col: usize,
        message: String,
    },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid labels: {0}")]
    InvalidLabels(String),
    #[error("cluster id {cluster} out of range for l = {l}")]
    UnknownCluster { cluster: usize, l: usize },
    #[error(
        "granulation produced m = {m} balls, so the sweep bound floor(sqrt(m)) = {bound} \
         is below 2; lower --bd-threshold-fraction to granulate finer"
    )]
    SweepBound { m: usize, bound: usize },
    #[error("no valid scores: {0}")]
    NoValidScores(String),
    #[error("asked k-means for {l} clusters from only {items} items")]
    TooFewItems { l: usize, items: usize },
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Convenient alias for results produced by this crate.
pub type Result<T> = std::result::Result<T, Error>;
