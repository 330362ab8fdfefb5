use thiserror::Error;

#[derive(Debug, Error)]
pub enum LabError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid data: {0}")]
    InvalidData(String),
    #[error("profile error: {0}")]
    Profile(String),
    #[error("divergent profile: {0}")]
    DivergentProfile(String),
    #[error("grid too small: {0}")]
    GridTooSmall(String),
    #[error("boundary leak: {0}")]
    BoundaryLeak(String),
    #[error("wall singularity: {0}")]
    WallSingularity(String),
    #[error("invalid time: {0}")]
    InvalidTime(String),
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("invalid support: {0}")]
    InvalidSupport(String),
    #[error("support touches zero: {0}")]
    SupportTouchesZero(String),
    #[error("unsupported rank: {0}")]
    UnsupportedRank(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, LabError>;
