//! Error type shared by every module in the crate.

use std::fmt;

/// Errors reported by table construction and evaluation routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A parameter violated a precondition (caps, positivity, coverage).
    InvalidArgument(String),
    /// An evaluation point fell outside the open interval where the
    /// expansion is valid. Carries the interval bounds for diagnostics.
    Domain {
        what: String,
        lo: f64,
        hi: f64,
    },
    /// A query option the family's bound construction does not provide
    /// (e.g. sharpened constants for the cot/cosec families).
    UnsupportedOption(String),
    /// A computed quantity escaped its proven enclosure, which signals a
    /// defective coefficient table rather than a caller mistake.
    OutOfRange(String),
    /// Arguments outside the supported evaluation range of the ascending
    /// Bessel series machinery.
    UnsupportedRange(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::Domain { what, lo, hi } => {
                write!(f, "domain error: {what} must lie in ({lo}, {hi})")
            }
            Error::UnsupportedOption(msg) => write!(f, "unsupported option: {msg}"),
            Error::OutOfRange(msg) => write!(f, "out of range: {msg}"),
            Error::UnsupportedRange(msg) => write!(f, "unsupported range: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
