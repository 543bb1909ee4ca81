use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, LabError>;

#[derive(Debug, thiserror::Error)]
pub enum LabError {
    /// Unparsable or semantically invalid configuration; the message names the key.
    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),
    #[error("no solution bundle at {}", .0.display())]
    BundleMissing(PathBuf),
    #[error("{}: {why}", .path.display())]
    Format { path: PathBuf, why: String },
    #[error(transparent)]
    Core(#[from] bernoulli_core::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl LabError {
    pub(crate) fn format(path: impl Into<PathBuf>, why: impl ToString) -> Self {
        LabError::Format { path: path.into(), why: why.to_string() }
    }
}
