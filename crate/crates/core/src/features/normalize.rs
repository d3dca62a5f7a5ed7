use super::{FeatureVector, FEATURE_DIM};
use crate::error::{invalid, Result};

/// Per-dimension min/max observed on a training set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalizationStats {
    pub min: [f64; FEATURE_DIM],
    pub max: [f64; FEATURE_DIM],
}

impl NormalizationStats {
    pub fn is_constant(&self, dim: usize) -> bool {
        self.max[dim] == self.min[dim]
    }

    pub fn apply(&self, v: &FeatureVector) -> FeatureVector {
        apply_normalization(v, self)
    }

    /// Normalizes straight to an array, the form the classifiers consume.
    pub fn apply_array(&self, v: &FeatureVector) -> [f64; FEATURE_DIM] {
        let x = v.to_array();
        core::array::from_fn(|d| {
            if self.is_constant(d) {
                0.5
            } else {
                ((x[d] - self.min[d]) / (self.max[d] - self.min[d])).clamp(0.0, 1.0)
            }
        })
    }
}

pub fn fit_normalization(train: &[FeatureVector]) -> Result<NormalizationStats> {
    let first = train
        .first()
        .ok_or_else(|| invalid("cannot fit normalization on an empty training set"))?
        .to_array();
    let mut stats = NormalizationStats {
        min: first,
        max: first,
    };
    for v in &train[1..] {
        for (d, x) in v.to_array().into_iter().enumerate() {
            stats.min[d] = stats.min[d].min(x);
            stats.max[d] = stats.max[d].max(x);
        }
    }
    Ok(stats)
}

/// `(x − min) / (max − min)` clamped to [0, 1]; constant dimensions map to 0.5.
pub fn apply_normalization(v: &FeatureVector, s: &NormalizationStats) -> FeatureVector {
    FeatureVector::from_array(s.apply_array(v))
}
