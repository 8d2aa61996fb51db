use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invariant failure: {0}")]
    Invariant(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("truncation depth {have} is too shallow, need {need}")]
    InsufficientDepth { have: u32, need: u32 },
    #[error("polynomial degree {0} exceeds the cap")]
    DegreeOverflow(u32),
    #[error("module does not split over the rationals: {0}")]
    SplittingFailure(String),
    #[error("head of the module is not simple: {0}")]
    HeadNotSimple(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::RankMismatch { .. }
            | Error::Precondition(_)
            | Error::Parse(_)
            | Error::InsufficientDepth { .. }
            | Error::HeadNotSimple(_)
            | Error::Io(_)
            | Error::Json(_) => 1,
            Error::Invariant(_) | Error::DegreeOverflow(_) | Error::SplittingFailure(_) => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
