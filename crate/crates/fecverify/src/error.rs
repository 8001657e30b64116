use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("unknown category {given:?}; expected one of: {allowed}")]
    UnknownCategory { given: String, allowed: String },
    #[error("filter {0:?} matches no record or check")]
    UnknownFilter(String),
    #[error("invalid filter pattern {pattern:?}: {reason}")]
    BadPattern { pattern: String, reason: String },
    #[error("{path}:{line}: {reason}")]
    Parse { path: PathBuf, line: usize, reason: String },
    #[error("unknown code {0:?}; expected uncoded, hamming74 or conv75[:N]")]
    UnknownCode(String),
    #[error(transparent)]
    Core(#[from] fecverify_core::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Toml(#[from] toml::de::Error),
    #[error("thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

pub type Result<T> = std::result::Result<T, HarnessError>;
