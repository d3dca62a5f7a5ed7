//! The 13-dimensional spatial feature vector of a glyph.
//!
//! Components, in order: average stroke length along 0°, 45°, 90° and 135°,
//! summed stroke density, on-pixel ratio after hole filling, aspect ratio,
//! moment eccentricity, extent, and the four directional background
//! profiles (left, right, top, bottom).

mod normalize;
mod shape;
mod strokes;

pub use normalize::{apply_normalization, fit_normalization, NormalizationStats};
pub use shape::{
    aspect_ratio, directional_profiles, eccentricity, extent, on_pixel_ratio, profile_counts,
    Profiles, ECCENTRICITY_CAP,
};
pub use strokes::{
    avg_stroke_density, avg_stroke_length, directional_strokes, directional_strokes_with,
    DirectionalStrokes,
};

use crate::error::Result;
use crate::imaging::{bounding_box, crop, BinaryImage, BoundingBox};
use crate::morphology::{Direction, OpOrder, SeThreshold};

/// Number of components in a [`FeatureVector`].
pub const FEATURE_DIM: usize = 13;

/// Column names in vector order, as used by the CSV export.
pub const FEATURE_NAMES: [&str; FEATURE_DIM] = [
    "omega0", "omega45", "omega90", "omega135", "density", "eta", "beta", "ecc", "extent", "pleft",
    "pright", "ptop", "pbottom",
];

/// Parameters of stroke extraction.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FeatureConfig {
    pub fraction: SeThreshold,
    pub op_order: OpOrder,
}

impl FeatureConfig {
    pub fn with_fraction(fraction: SeThreshold) -> Self {
        Self {
            fraction,
            op_order: OpOrder::Opening,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeatureVector {
    pub omega_0: f64,
    pub omega_45: f64,
    pub omega_90: f64,
    pub omega_135: f64,
    pub stroke_density: f64,
    pub on_pixel_ratio: f64,
    pub aspect_ratio: f64,
    pub eccentricity: f64,
    pub extent: f64,
    pub profile_left: f64,
    pub profile_right: f64,
    pub profile_top: f64,
    pub profile_bottom: f64,
}

impl FeatureVector {
    pub fn to_array(&self) -> [f64; FEATURE_DIM] {
        [
            self.omega_0,
            self.omega_45,
            self.omega_90,
            self.omega_135,
            self.stroke_density,
            self.on_pixel_ratio,
            self.aspect_ratio,
            self.eccentricity,
            self.extent,
            self.profile_left,
            self.profile_right,
            self.profile_top,
            self.profile_bottom,
        ]
    }

    pub fn from_array(a: [f64; FEATURE_DIM]) -> Self {
        Self {
            omega_0: a[0],
            omega_45: a[1],
            omega_90: a[2],
            omega_135: a[3],
            stroke_density: a[4],
            on_pixel_ratio: a[5],
            aspect_ratio: a[6],
            eccentricity: a[7],
            extent: a[8],
            profile_left: a[9],
            profile_right: a[10],
            profile_top: a[11],
            profile_bottom: a[12],
        }
    }

    pub fn omega(&self, direction: Direction) -> f64 {
        match direction {
            Direction::Deg0 => self.omega_0,
            Direction::Deg45 => self.omega_45,
            Direction::Deg90 => self.omega_90,
            Direction::Deg135 => self.omega_135,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|v| v.is_finite())
    }
}

/// Computes the full feature vector of one glyph.
///
/// The glyph is cropped to its bounding box first, so margins never affect
/// the result.
pub fn extract_features(img: &BinaryImage, config: &FeatureConfig) -> Result<FeatureVector> {
    let bbox = bounding_box(img)?;
    let cropped;
    let glyph = if bbox == BoundingBox::full(img.width(), img.height()) {
        img
    } else {
        cropped = crop(img, &bbox)?;
        &cropped
    };
    let glyph_box = BoundingBox::full(glyph.width(), glyph.height());

    let mut strokes = alloc::vec::Vec::with_capacity(4);
    for d in Direction::ALL {
        strokes.push(directional_strokes_with(glyph, d, config)?);
    }
    let [s0, s45, s90, s135] = [&strokes[0], &strokes[1], &strokes[2], &strokes[3]];
    let density = avg_stroke_density([s0, s45, s90, s135], glyph.width());
    let profiles = directional_profiles(glyph)?;

    Ok(FeatureVector {
        omega_0: avg_stroke_length(s0),
        omega_45: avg_stroke_length(s45),
        omega_90: avg_stroke_length(s90),
        omega_135: avg_stroke_length(s135),
        stroke_density: density,
        on_pixel_ratio: on_pixel_ratio(glyph),
        aspect_ratio: aspect_ratio(&glyph_box),
        eccentricity: eccentricity(glyph)?,
        extent: extent(glyph, &glyph_box)?,
        profile_left: profiles.left,
        profile_right: profiles.right,
        profile_top: profiles.top,
        profile_bottom: profiles.bottom,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn solid_square() {
        let img = BinaryImage::filled(12, 12).unwrap();
        let v = extract_features(&img, &FeatureConfig::default()).unwrap();
        assert_eq!(v.to_array().len(), FEATURE_DIM);
        assert_eq!(v.aspect_ratio, 1.0);
        assert_eq!(v.extent, 1.0);
        assert_eq!(v.on_pixel_ratio, 1.0);
        assert_eq!(
            (
                v.profile_left,
                v.profile_right,
                v.profile_top,
                v.profile_bottom
            ),
            (0.0, 0.0, 0.0, 0.0)
        );
        assert!((v.eccentricity - 1.0).abs() < 1e-12);
    }

    #[test]
    fn margins_do_not_matter() {
        let img = BinaryImage::from_ascii(&["####", "#..#", "####", "#..."]).unwrap();
        let cfg = FeatureConfig::default();
        let a = extract_features(&img, &cfg).unwrap();
        let b = extract_features(&img.padded(3), &cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn empty_glyph_propagates() {
        let img = BinaryImage::blank(4, 4).unwrap();
        assert_eq!(
            extract_features(&img, &FeatureConfig::default()),
            Err(Error::EmptyGlyph)
        );
    }

    #[test]
    fn array_roundtrip() {
        let a: [f64; FEATURE_DIM] = core::array::from_fn(|i| i as f64 * 0.5);
        assert_eq!(FeatureVector::from_array(a).to_array(), a);
    }
}
