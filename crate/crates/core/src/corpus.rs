//! Labelled glyph samples, stratified splitting and synthetic variants.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{invalid, Error, Result};
use crate::imaging::{binarize, bounding_box, crop, median_filter, BinaryImage, GrayImage};

/// One preprocessed, cropped glyph with its metadata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sample {
    pub id: String,
    pub label: String,
    pub style: String,
    pub size_pt: u32,
    pub image: BinaryImage,
}

/// How to divide a sample set into training and test halves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitSpec {
    pub train_fraction: f64,
    pub seed: u64,
    pub stratified: bool,
}

impl Default for SplitSpec {
    fn default() -> Self {
        Self {
            train_fraction: 0.5,
            seed: 0,
            stratified: true,
        }
    }
}

/// Training count for a group of `n`: `ceil(fraction × n)`.
pub fn train_count(fraction: f64, n: usize) -> usize {
    // 1e-9 absorbs representation error such as 0.7 × 10 = 7.000000000000001
    (libm::ceil(fraction * n as f64 - 1e-9) as usize).min(n)
}

/// Splits `samples` into `(train, test)` index lists, each in input order.
///
/// Stratified splits draw `ceil(fraction × class size)` training samples
/// per label, so odd remainders land in the training half.
pub fn split_indices(samples: &[Sample], spec: &SplitSpec) -> Result<(Vec<usize>, Vec<usize>)> {
    if !(spec.train_fraction > 0.0 && spec.train_fraction < 1.0) {
        return Err(invalid("train fraction must lie in (0, 1)"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut is_train = alloc::vec![false; samples.len()];

    let groups: Vec<Vec<usize>> = if spec.stratified {
        let mut by_label: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
        for (i, s) in samples.iter().enumerate() {
            by_label.entry(s.label.as_str()).or_default().push(i);
        }
        // visit labels in order of first appearance
        let mut groups: Vec<Vec<usize>> = by_label.into_values().collect();
        groups.sort_by_key(|g| g[0]);
        if let Some(g) = groups.iter().find(|g| g.len() < 2) {
            return Err(Error::InvalidCorpus(format!(
                "class {} has a single sample and cannot be split",
                samples[g[0]].label
            )));
        }
        groups
    } else {
        alloc::vec![(0..samples.len()).collect()]
    };

    for mut group in groups {
        shuffle(&mut group, &mut rng);
        let n_train = train_count(spec.train_fraction, group.len());
        for &i in &group[..n_train] {
            is_train[i] = true;
        }
    }

    let train = (0..samples.len()).filter(|&i| is_train[i]).collect();
    let test = (0..samples.len()).filter(|&i| !is_train[i]).collect();
    Ok((train, test))
}

/// Splits `samples` into owned `(train, test)` halves.
pub fn split(samples: &[Sample], spec: &SplitSpec) -> Result<(Vec<Sample>, Vec<Sample>)> {
    let (train, test) = split_indices(samples, spec)?;
    Ok((
        train.into_iter().map(|i| samples[i].clone()).collect(),
        test.into_iter().map(|i| samples[i].clone()).collect(),
    ))
}

/// Fisher–Yates with an unbiased bounded draw.
fn shuffle<T>(items: &mut [T], rng: &mut ChaCha8Rng) {
    for i in (1..items.len()).rev() {
        let j = bounded(rng, i as u64 + 1) as usize;
        items.swap(i, j);
    }
}

fn bounded(rng: &mut ChaCha8Rng, n: u64) -> u64 {
    let zone = u64::MAX - u64::MAX % n;
    loop {
        let v = rng.next_u64();
        if v < zone {
            return v % n;
        }
    }
}

/// Settings for [`synth_variants`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthConfig {
    /// Glyph height in pixels at 16 pt; heights scale linearly with point size.
    pub baseline_px: f64,
    /// Add salt-and-pepper noise followed by a 3×3 median filter.
    pub noise: bool,
    /// Per-pixel probability of flipping to salt or pepper.
    pub noise_rate: f64,
    pub seed: u64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        Self {
            baseline_px: 24.0,
            noise: false,
            noise_rate: 0.01,
            seed: 0,
        }
    }
}

pub const MIN_SYNTH_PT: u32 = 8;
pub const MAX_SYNTH_PT: u32 = 100;

/// Target glyph height for a point size.
pub fn height_for_size(size_pt: u32, baseline_px: f64) -> usize {
    (libm::round(baseline_px * size_pt as f64 / 16.0) as usize).max(1)
}

/// Renders size (and optionally noise) variants of one glyph.
///
/// Each variant is a nearest-neighbour rescale of `seed` to the height
/// implied by its point size, re-cropped to its bounding box. Variants that
/// come out empty are skipped. Ids get an `@<size>pt` suffix (plus `+noise`).
pub fn synth_variants(seed: &Sample, sizes: &[u32], config: &SynthConfig) -> Result<Vec<Sample>> {
    if seed.image.count_on() == 0 {
        return Err(Error::EmptyGlyph);
    }
    if let Some(&bad) = sizes
        .iter()
        .find(|&&s| !(MIN_SYNTH_PT..=MAX_SYNTH_PT).contains(&s))
    {
        return Err(invalid(format!(
            "point size {bad} outside [{MIN_SYNTH_PT}, {MAX_SYNTH_PT}]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let glyph = crop(&seed.image, &bounding_box(&seed.image)?)?;

    let mut out = Vec::with_capacity(sizes.len());
    for &size in sizes {
        let h = height_for_size(size, config.baseline_px);
        let scale = h as f64 / glyph.height() as f64;
        let w = (libm::round(glyph.width() as f64 * scale) as usize).max(1);
        let mut img = resize_nearest(&glyph, w, h);
        if config.noise {
            img = add_noise(&img, config.noise_rate, &mut rng)?;
        }
        let Ok(bbox) = bounding_box(&img) else {
            continue;
        };
        let image = crop(&img, &bbox)?;
        let mut id = format!("{}@{}pt", seed.id, size);
        if config.noise {
            id.push_str("+noise");
        }
        out.push(Sample {
            id,
            label: seed.label.clone(),
            style: seed.style.clone(),
            size_pt: size,
            image,
        });
    }
    Ok(out)
}

/// Nearest-neighbour resampling with pixel-centre alignment.
pub fn resize_nearest(img: &BinaryImage, width: usize, height: usize) -> BinaryImage {
    let (sw, sh) = (img.width(), img.height());
    let mut bits = Vec::with_capacity(width * height);
    for y in 0..height {
        let sy = ((2 * y + 1) * sh / (2 * height)).min(sh - 1);
        for x in 0..width {
            let sx = ((2 * x + 1) * sw / (2 * width)).min(sw - 1);
            bits.push(img.get(sx, sy));
        }
    }
    BinaryImage::new(width, height, bits).expect("target dimensions are nonzero")
}

fn add_noise(img: &BinaryImage, rate: f64, rng: &mut ChaCha8Rng) -> Result<BinaryImage> {
    // one pixel of paper around the glyph so pepper can land outside it too
    let padded = img.padded(1);
    let mut gray = GrayImage::from_binary(&padded);
    let threshold = (rate.clamp(0.0, 1.0) * u64::MAX as f64) as u64;
    for y in 0..gray.height() {
        for x in 0..gray.width() {
            if rng.next_u64() < threshold {
                let v = if rng.next_u64() & 1 == 0 { 0 } else { 255 };
                gray.set(x, y, v);
            }
        }
    }
    let filtered = median_filter(&gray, 3)?;
    Ok(binarize(&filtered, 127))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn sample(label: &str, i: usize) -> Sample {
        Sample {
            id: format!("{label}-{i}"),
            label: label.to_string(),
            style: "s".to_string(),
            size_pt: 16,
            image: BinaryImage::filled(2, 2).unwrap(),
        }
    }

    #[test]
    fn pair_splits_one_and_one() {
        let s = [sample("a", 0), sample("a", 1)];
        let (tr, te) = split_indices(&s, &SplitSpec::default()).unwrap();
        assert_eq!((tr.len(), te.len()), (1, 1));
    }

    #[test]
    fn singleton_class_cannot_be_stratified() {
        let s = [sample("a", 0), sample("a", 1), sample("b", 0)];
        assert!(matches!(
            split_indices(&s, &SplitSpec::default()),
            Err(Error::InvalidCorpus(_))
        ));
        let loose = SplitSpec {
            stratified: false,
            ..SplitSpec::default()
        };
        let (tr, te) = split_indices(&s, &loose).unwrap();
        assert_eq!((tr.len(), te.len()), (2, 1));
    }

    #[test]
    fn odd_remainder_goes_to_training() {
        let s: Vec<Sample> = (0..5).map(|i| sample("a", i)).collect();
        let (tr, te) = split_indices(&s, &SplitSpec::default()).unwrap();
        assert_eq!((tr.len(), te.len()), (3, 2));
    }

    #[test]
    fn train_count_is_robust_to_rounding() {
        assert_eq!(train_count(0.7, 10), 7);
        assert_eq!(train_count(0.5, 110), 55);
        assert_eq!(train_count(0.5, 3), 2);
    }

    #[test]
    fn rejects_degenerate_fraction() {
        let s = [sample("a", 0), sample("a", 1)];
        for f in [0.0, 1.0, -0.5] {
            let spec = SplitSpec {
                train_fraction: f,
                ..SplitSpec::default()
            };
            assert!(split_indices(&s, &spec).is_err());
        }
    }

    #[test]
    fn resize_doubles_pixels() {
        let img = BinaryImage::from_ascii(&["#.", ".#"]).unwrap();
        let up = resize_nearest(&img, 4, 4);
        assert_eq!(
            up,
            BinaryImage::from_ascii(&["##..", "##..", "..##", "..##"]).unwrap()
        );
        assert_eq!(resize_nearest(&up, 2, 2), img);
    }

    #[test]
    fn baseline_height_is_identity() {
        let mut s = sample("a", 0);
        s.image =
            BinaryImage::from_ascii(&["..........", "..####....", "..#..#....", "..####...."])
                .unwrap();
        let target = height_for_size(16, 3.0 * 16.0 / 16.0);
        assert_eq!(target, 3);
        let cfg = SynthConfig {
            baseline_px: 3.0,
            ..SynthConfig::default()
        };
        let out = synth_variants(&s, &[16], &cfg).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(
            out[0].image,
            crop(&s.image, &bounding_box(&s.image).unwrap()).unwrap()
        );
        assert_eq!(out[0].id, "a-0@16pt");
    }

    #[test]
    fn sizes_are_range_checked() {
        let s = sample("a", 0);
        assert!(synth_variants(&s, &[7], &SynthConfig::default()).is_err());
        assert!(synth_variants(&s, &[101], &SynthConfig::default()).is_err());
    }
}
