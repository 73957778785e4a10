//! IO, file formats, report emission, and the command-line front end for
//! the review values-violation detector. Algorithms live in
//! `revalues-core`; this crate feeds them from files and writes their
//! outputs back out.

pub mod assets;
pub mod cli;
pub mod config;
pub mod ingest;
pub mod pipeline;
pub mod report;

/// Process exit classification: usage errors exit 1, data and validation
/// errors exit 2, I/O failures exit 3.
#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
    #[error("{0}")]
    Io(String),
}

impl AppError {
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Usage(_) => 1,
            AppError::Data(_) => 2,
            AppError::Io(_) => 3,
        }
    }
}

pub type AppResult<T> = Result<T, AppError>;
