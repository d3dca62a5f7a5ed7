//! Corpus manifests and corpus loading.
//!
//! A manifest is a JSON document:
//!
//! ```json
//! {
//!   "version": 1,
//!   "classes": ["0", "1"],
//!   "samples": [
//!     {"path": "zero.pgm", "label": "0", "style": "serif", "size_pt": 16, "sha256": "…"}
//!   ]
//! }
//! ```
//!
//! Paths are relative to the manifest's directory.

use std::collections::HashSet;
use std::fmt;
use std::path::{Path, PathBuf};

use glyphstroke_core::corpus::Sample;
use glyphstroke_core::imaging::{
    binarize, bounding_box, crop, median_filter, otsu_threshold, BinaryImage,
};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::pnm::{parse_pnm, PnmImage};

pub const MANIFEST_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub version: u32,
    pub classes: Vec<String>,
    pub samples: Vec<ManifestEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifestEntry {
    pub path: String,
    pub label: String,
    pub style: String,
    pub size_pt: u32,
    pub sha256: String,
}

impl Manifest {
    pub fn from_json(text: &str) -> Result<Self> {
        let m: Manifest = serde_json::from_str(text).map_err(|e| Error::Manifest(e.to_string()))?;
        m.validate()?;
        Ok(m)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }

    fn validate(&self) -> Result<()> {
        if self.version != MANIFEST_VERSION {
            return Err(Error::Manifest(format!(
                "unsupported manifest version {} (expected {MANIFEST_VERSION})",
                self.version
            )));
        }
        let mut seen = HashSet::new();
        for c in &self.classes {
            if c.is_empty() || c.chars().any(char::is_whitespace) {
                return Err(Error::Manifest(format!("invalid class name {c:?}")));
            }
            if !seen.insert(c.as_str()) {
                return Err(Error::Manifest(format!("duplicate class {c}")));
            }
        }
        let mut paths = HashSet::new();
        for s in &self.samples {
            if !seen.contains(s.label.as_str()) {
                return Err(Error::Manifest(format!(
                    "sample {} has undeclared label {}",
                    s.path, s.label
                )));
            }
            if !paths.insert(s.path.as_str()) {
                return Err(Error::Manifest(format!("duplicate sample path {}", s.path)));
            }
        }
        Ok(())
    }
}

/// Reads and validates a manifest file.
pub fn read_manifest(path: &Path) -> Result<Manifest> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Manifest::from_json(&text)
}

/// Lowercase hex SHA-256 of `data`.
pub fn sha256_hex(data: &[u8]) -> String {
    Sha256::digest(data)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Why one manifest entry could not be loaded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleError {
    pub path: String,
    pub reason: String,
}

impl fmt::Display for SampleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.reason)
    }
}

/// A loaded corpus: the manifest's class list and its samples in manifest order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    pub classes: Vec<String>,
    pub samples: Vec<Sample>,
    /// Entries skipped in lenient mode.
    pub skipped: Vec<SampleError>,
}

impl Corpus {
    /// Keeps only samples whose style is listed; an empty list keeps all.
    pub fn retain_styles(&mut self, styles: &[String]) {
        if !styles.is_empty() {
            self.samples.retain(|s| styles.contains(&s.style));
        }
    }

    /// Index of every sample's label in [`Corpus::classes`].
    pub fn label_indices(&self) -> Vec<usize> {
        self.samples
            .iter()
            .map(|s| {
                self.classes
                    .iter()
                    .position(|c| *c == s.label)
                    .expect("labels are validated against classes")
            })
            .collect()
    }
}

/// Turns a decoded file into a cropped binary glyph.
///
/// Graymaps are median filtered (3×3), thresholded with Otsu's method and
/// cropped; bitmaps are only cropped. Holes are left intact.
pub fn preprocess(img: &PnmImage) -> glyphstroke_core::Result<BinaryImage> {
    let binary = match img {
        PnmImage::Gray { image, .. } => {
            let smooth = median_filter(image, 3)?;
            binarize(&smooth, otsu_threshold(&smooth))
        }
        PnmImage::Bitmap(b) => b.clone(),
    };
    crop(&binary, &bounding_box(&binary)?)
}

/// Loads a single image file and preprocesses it.
pub fn load_glyph(path: &Path) -> Result<BinaryImage> {
    let data = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    let img = parse_pnm(&data).map_err(|e| Error::Image(path.to_path_buf(), e))?;
    preprocess(&img).map_err(Error::Core)
}

/// Loads every sample of a manifest.
///
/// In strict mode any failing entry fails the load with all per-sample
/// errors listed; in lenient mode failing entries are skipped and recorded.
pub fn load_corpus(manifest_path: &Path, lenient: bool) -> Result<Corpus> {
    let manifest = read_manifest(manifest_path)?;
    let base = manifest_path
        .parent()
        .map_or_else(PathBuf::new, Path::to_path_buf);
    load_manifest(&manifest, &base, lenient)
}

/// Loads the samples of an already parsed manifest relative to `base`.
pub fn load_manifest(manifest: &Manifest, base: &Path, lenient: bool) -> Result<Corpus> {
    if manifest.samples.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let mut samples = Vec::with_capacity(manifest.samples.len());
    let mut errors = Vec::new();
    for entry in &manifest.samples {
        match load_entry(entry, base) {
            Ok(image) => samples.push(Sample {
                id: entry.path.clone(),
                label: entry.label.clone(),
                style: entry.style.clone(),
                size_pt: entry.size_pt,
                image,
            }),
            Err(reason) => errors.push(SampleError {
                path: entry.path.clone(),
                reason,
            }),
        }
    }
    if !errors.is_empty() && !lenient {
        return Err(Error::Samples(errors));
    }
    if samples.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    Ok(Corpus {
        classes: manifest.classes.clone(),
        samples,
        skipped: errors,
    })
}

fn load_entry(entry: &ManifestEntry, base: &Path) -> std::result::Result<BinaryImage, String> {
    let path = base.join(&entry.path);
    let data = std::fs::read(&path).map_err(|e| format!("cannot read file: {e}"))?;
    let digest = sha256_hex(&data);
    if !digest.eq_ignore_ascii_case(&entry.sha256) {
        return Err(format!("checksum mismatch (file has {digest})"));
    }
    let img = parse_pnm(&data).map_err(|e| e.to_string())?;
    preprocess(&img).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_undeclared_labels_and_versions() {
        let ok = r#"{"version":1,"classes":["a","b"],"samples":[]}"#;
        assert!(Manifest::from_json(ok).is_ok());
        let bad_label = r#"{"version":1,"classes":["a"],"samples":[
            {"path":"x","label":"b","style":"s","size_pt":16,"sha256":""}]}"#;
        assert!(Manifest::from_json(bad_label).is_err());
        let bad_version = r#"{"version":2,"classes":["a"],"samples":[]}"#;
        assert!(Manifest::from_json(bad_version).is_err());
        let dup = r#"{"version":1,"classes":["a","a"],"samples":[]}"#;
        assert!(Manifest::from_json(dup).is_err());
    }

    #[test]
    fn sha256_of_empty_input() {
        assert_eq!(
            sha256_hex(b""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }
}
