//! File formats, corpus loading, reports and the experiment harness for
//! [`glyphstroke_core`].
//!
//! * [`pnm`]: P4/P5 image codec.
//! * [`manifest`]: corpus manifests and [`manifest::load_corpus`].
//! * [`feature_csv`]: feature table export.
//! * [`model_file`]: versioned text serialization of trained models.
//! * [`report`]: evaluation and sweep reports.
//! * [`harness`]: train/evaluate/sweep over a corpus.

mod error;
pub mod feature_csv;
pub mod harness;
pub mod manifest;
pub mod model_file;
pub mod pnm;
pub mod report;

use std::io::Write;
use std::path::Path;

pub use error::{Error, Result};

/// Writes `data` to `path` through a temporary file in the same directory
/// and a rename, so readers never see a partial file.
pub fn write_atomic(path: &Path, data: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(path, e))?;
    tmp.write_all(data).map_err(|e| Error::io(path, e))?;
    tmp.as_file().sync_all().map_err(|e| Error::io(path, e))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}
