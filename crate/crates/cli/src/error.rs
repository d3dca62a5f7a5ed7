use std::path::{Path, PathBuf};

use crate::manifest::SampleError;
use crate::model_file::ModelError;
use crate::pnm::PnmError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: {1}", .0.display())]
    Image(PathBuf, PnmError),
    #[error("invalid manifest: {0}")]
    Manifest(String),
    #[error("empty corpus")]
    EmptyCorpus,
    #[error("{} sample(s) failed to load:\n{}", .0.len(), list(.0))]
    Samples(Vec<SampleError>),
    #[error("{0}")]
    Core(#[from] glyphstroke_core::Error),
    #[error("model file: {0}")]
    Model(#[from] ModelError),
    #[error("class {0} is not known to the model")]
    UnknownClass(String),
    #[error("{0}")]
    Usage(String),
}

fn list(errors: &[SampleError]) -> String {
    errors
        .iter()
        .map(|e| format!("  {e}"))
        .collect::<Vec<_>>()
        .join("\n")
}

impl Error {
    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        Error::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    /// Process exit code: 1 usage, 2 data, 3 training failure.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::Usage(_) | Error::Core(glyphstroke_core::Error::InvalidParameter(_)) => 1,
            Error::Core(glyphstroke_core::Error::Training { .. }) => 3,
            _ => 2,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let training = glyphstroke_core::Error::Training {
            positive: "a".into(),
            negative: "b".into(),
            reason: "diverged".into(),
        };
        assert_eq!(Error::Core(training).exit_code(), 3);
        assert_eq!(Error::Usage("x".into()).exit_code(), 1);
        assert_eq!(Error::EmptyCorpus.exit_code(), 2);
        assert_eq!(Error::UnknownClass("q".into()).exit_code(), 2);
    }
}
