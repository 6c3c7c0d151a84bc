//! Command-line front end, file formats and verification suites for
//! `wittforge-core`.

pub mod cache;
pub mod cli;
pub mod json;
pub mod suites;

use std::io;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] wittforge_core::Error),
    #[error("io: {0}")]
    Io(#[from] io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("usage: {0}")]
    Usage(String),
    #[error("unknown suite {0:?}; see `verify --list`")]
    UnknownSuite(String),
    #[error("cache file {path}: {reason}")]
    Cache { path: String, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
