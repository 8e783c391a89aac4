use std::path::PathBuf;

use nehari::NehariError;

/// Exit status for usage and configuration errors.
pub const EXIT_USAGE: i32 = 1;
/// Exit status when a checked hypothesis fails.
pub const EXIT_HYPOTHESIS: i32 = 2;
/// Exit status for non-convergence and missing interior maxima.
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read config {}: {source}", path.display())]
    ReadConfig { path: PathBuf, source: std::io::Error },
    #[error("config error at {path}: {message}")]
    Config { path: String, message: String },
    #[error("cannot write {}: {source}", path.display())]
    Write { path: PathBuf, source: std::io::Error },
    #[error("cannot start {workers} worker threads: {reason}")]
    Workers { workers: usize, reason: String },
    #[error(transparent)]
    Core(#[from] NehariError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if is_numerical(e) => EXIT_NUMERICAL,
            _ => EXIT_USAGE,
        }
    }
}

/// Failures of the computation itself, as opposed to invalid input.
pub fn is_numerical(e: &NehariError) -> bool {
    matches!(
        e,
        NehariError::BoundaryMaximum { .. }
            | NehariError::AmbiguousMaximum { .. }
            | NehariError::NonFinite(_)
            | NehariError::Estimation(_)
    )
}
