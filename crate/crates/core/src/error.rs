use alloc::string::String;
use core::fmt;

/// Errors produced by the in-memory pipeline.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A parameter is outside its documented domain.
    InvalidParameter(String),
    /// The glyph has no foreground pixels.
    EmptyGlyph,
    /// The sample set cannot be used as requested (e.g. a class too small to split).
    InvalidCorpus(String),
    /// Binary SVM training failed for the given class pair.
    Training {
        positive: String,
        negative: String,
        reason: String,
    },
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::EmptyGlyph => f.write_str("empty glyph: image has no on-pixels"),
            Error::InvalidCorpus(msg) => write!(f, "invalid corpus: {msg}"),
            Error::Training {
                positive,
                negative,
                reason,
            } => write!(
                f,
                "training failed for pair ({positive}, {negative}): {reason}"
            ),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
