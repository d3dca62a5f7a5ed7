//! k-nearest-neighbour baseline in normalized feature space.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::multiclass::check_labelled_set;
use crate::error::{invalid, Result};
use crate::features::{
    fit_normalization, FeatureConfig, FeatureVector, NormalizationStats, FEATURE_DIM,
};

#[derive(Debug, Clone, PartialEq)]
pub struct KnnModel {
    pub classes: Vec<String>,
    /// Normalized training vectors.
    pub vectors: Vec<[f64; FEATURE_DIM]>,
    pub labels: Vec<usize>,
    pub k: usize,
    pub normalization: NormalizationStats,
    pub feature_config: FeatureConfig,
}

pub const DEFAULT_K: usize = 3;

pub fn fit_knn(
    classes: &[String],
    features: &[FeatureVector],
    labels: &[usize],
    k: usize,
    feature_config: FeatureConfig,
) -> Result<KnnModel> {
    check_labelled_set(classes, features, labels)?;
    if k == 0 || k > features.len() {
        return Err(invalid("k must lie in 1..=training set size"));
    }
    let normalization = fit_normalization(features)?;
    Ok(KnnModel {
        classes: classes.to_vec(),
        vectors: features
            .iter()
            .map(|v| normalization.apply_array(v))
            .collect(),
        labels: labels.to_vec(),
        k,
        normalization,
        feature_config,
    })
}

/// Majority label among the `k` nearest training vectors (Euclidean).
///
/// Equal distances keep training-set order. Vote ties go to the class with
/// the smallest mean neighbour distance, then to the earlier class.
pub fn knn_classify(m: &KnnModel, x: &FeatureVector) -> usize {
    let z = m.normalization.apply_array(x);
    classify_normalized(m, &z)
}

pub(crate) fn classify_normalized(m: &KnnModel, z: &[f64; FEATURE_DIM]) -> usize {
    let mut order: Vec<(f64, usize)> = m
        .vectors
        .iter()
        .enumerate()
        .map(|(i, v)| (squared_distance(v, z), i))
        .collect();
    order.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

    let nc = m.classes.len();
    let mut votes = vec![0usize; nc];
    let mut dist_sum = vec![0.0f64; nc];
    for &(d2, i) in order.iter().take(m.k) {
        let c = m.labels[i];
        votes[c] += 1;
        dist_sum[c] += libm::sqrt(d2);
    }

    let mut best = 0;
    for c in 1..nc {
        if votes[c] == 0 {
            continue;
        }
        let better = votes[c] > votes[best]
            || (votes[c] == votes[best]
                && mean_dist(&dist_sum, &votes, c) < mean_dist(&dist_sum, &votes, best));
        if better {
            best = c;
        }
    }
    best
}

fn mean_dist(sum: &[f64], votes: &[usize], c: usize) -> f64 {
    sum[c] / votes[c] as f64
}

fn squared_distance(a: &[f64; FEATURE_DIM], b: &[f64; FEATURE_DIM]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn fv(x0: f64, x1: f64) -> FeatureVector {
        let mut a = [0.0; FEATURE_DIM];
        a[0] = x0;
        a[1] = x1;
        FeatureVector::from_array(a)
    }

    fn classes(k: usize) -> Vec<String> {
        (0..k).map(|i| i.to_string()).collect()
    }

    #[test]
    fn nearest_neighbour_recovers_training_label() {
        let f = [fv(0.0, 0.0), fv(1.0, 1.0), fv(0.2, 0.9)];
        let m = fit_knn(&classes(3), &f, &[0, 1, 2], 1, FeatureConfig::default()).unwrap();
        for (i, v) in f.iter().enumerate() {
            assert_eq!(knn_classify(&m, v), i);
        }
    }

    #[test]
    fn unanimous_neighbourhood() {
        let f = [fv(0.0, 0.0), fv(1.0, 1.0), fv(0.5, 0.2), fv(0.9, 0.9)];
        let m = fit_knn(&classes(2), &f, &[1, 1, 1, 0], 3, FeatureConfig::default()).unwrap();
        assert_eq!(knn_classify(&m, &fv(0.0, 0.1)), 1);
    }

    #[test]
    fn vote_tie_prefers_closer_class() {
        // k = 2 with one neighbour per class; class 1 is closer
        let f = [fv(0.0, 0.0), fv(1.0, 0.0), fv(0.0, 1.0)];
        let m = fit_knn(&classes(2), &f, &[0, 1, 0], 2, FeatureConfig::default()).unwrap();
        assert_eq!(knn_classify(&m, &fv(0.6, 0.0)), 1);
    }

    #[test]
    fn k_must_fit_the_training_set() {
        let f = [fv(0.0, 0.0), fv(1.0, 1.0)];
        assert!(fit_knn(&classes(2), &f, &[0, 1], 3, FeatureConfig::default()).is_err());
        assert!(fit_knn(&classes(2), &f, &[0, 1], 0, FeatureConfig::default()).is_err());
    }
}
