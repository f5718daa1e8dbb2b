use std::io;

use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),

    /// Malformed container or header structure.
    #[error("format error: {0}")]
    Format(String),

    /// Well-formed input that this toolkit deliberately does not handle.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Arguments outside an operation's domain (dimension mismatches, bad ranges).
    #[error("domain error: {0}")]
    Domain(String),

    /// Operation invoked on a value in the wrong state.
    #[error("state error: {0}")]
    State(String),

    /// Invalid configuration or scenario description.
    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
