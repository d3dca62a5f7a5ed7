#![allow(dead_code)]

use std::path::PathBuf;

use glyphstroke::manifest::{load_corpus, Corpus};
use glyphstroke_core::corpus::{synth_variants, SynthConfig};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

pub fn numerals() -> Corpus {
    load_corpus(&fixture("numerals/manifest.json"), false).unwrap()
}

pub fn vowels() -> Corpus {
    load_corpus(&fixture("vowels/manifest.json"), false).unwrap()
}

/// Noise-free size variants of every seed glyph.
pub fn augmented(seeds: &Corpus, sizes: &[u32]) -> Corpus {
    let mut samples = Vec::new();
    for s in &seeds.samples {
        samples.extend(synth_variants(s, sizes, &SynthConfig::default()).unwrap());
    }
    Corpus {
        classes: seeds.classes.clone(),
        samples,
        skipped: Vec::new(),
    }
}

pub const E2E_SIZES: [u32; 9] = [16, 20, 24, 28, 32, 36, 40, 44, 50];
