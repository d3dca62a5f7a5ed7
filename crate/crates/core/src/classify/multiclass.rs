use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::svm::{train_binary_svm, BinarySvmModel, SvmParams};
use crate::error::{Error, Result};
use crate::features::{fit_normalization, FeatureConfig, FeatureVector, NormalizationStats};

/// Binary model for classes `positive < negative` (indices into the class list).
#[derive(Debug, Clone, PartialEq)]
pub struct PairModel {
    pub positive: usize,
    pub negative: usize,
    pub model: BinarySvmModel,
}

/// One-vs-one SVM ensemble.
#[derive(Debug, Clone, PartialEq)]
pub struct MulticlassSvmModel {
    pub classes: Vec<String>,
    /// Pairs in lexicographic `(positive, negative)` order.
    pub pairs: Vec<PairModel>,
    pub normalization: NormalizationStats,
    pub feature_config: FeatureConfig,
    pub params: SvmParams,
}

impl MulticlassSvmModel {
    pub fn all_converged(&self) -> bool {
        self.pairs.iter().all(|p| p.model.converged)
    }

    /// Per-class votes and winning-margin sums for a raw feature vector.
    pub fn tally(&self, x: &FeatureVector) -> VoteTally {
        let z = self.normalization.apply_array(x);
        let k = self.classes.len();
        let mut tally = VoteTally {
            votes: vec![0; k],
            margin: vec![0.0; k],
        };
        for p in &self.pairs {
            let d = p.model.decision(&z);
            let winner = if d >= 0.0 { p.positive } else { p.negative };
            tally.votes[winner] += 1;
            tally.margin[winner] += d.abs();
        }
        tally
    }
}

/// Outcome of the pairwise vote.
#[derive(Debug, Clone, PartialEq)]
pub struct VoteTally {
    pub votes: Vec<u32>,
    /// Sum of `|decision|` over the contests each class won.
    pub margin: Vec<f64>,
}

impl VoteTally {
    /// Most votes; ties go to the larger margin sum, then the earlier class.
    pub fn winner(&self) -> usize {
        let mut best = 0;
        for c in 1..self.votes.len() {
            let better = self.votes[c] > self.votes[best]
                || (self.votes[c] == self.votes[best] && self.margin[c] > self.margin[best]);
            if better {
                best = c;
            }
        }
        best
    }
}

/// Trains `k(k − 1)/2` pairwise models on min-max normalized features.
///
/// `labels[i]` indexes `classes`. Normalization is fitted on the whole
/// training set before any pairwise training. Pair `p` is trained with seed
/// `params.seed + p`.
pub fn train_multiclass(
    classes: &[String],
    features: &[FeatureVector],
    labels: &[usize],
    params: &SvmParams,
    feature_config: FeatureConfig,
) -> Result<MulticlassSvmModel> {
    params.validate()?;
    check_labelled_set(classes, features, labels)?;

    let normalization = fit_normalization(features)?;
    let normalized: Vec<[f64; crate::features::FEATURE_DIM]> = features
        .iter()
        .map(|v| normalization.apply_array(v))
        .collect();

    let k = classes.len();
    let mut pairs = Vec::with_capacity(k * (k - 1) / 2);
    for positive in 0..k {
        for negative in positive + 1..k {
            let mut xs = Vec::new();
            let mut ys = Vec::new();
            for (x, &l) in normalized.iter().zip(labels) {
                if l == positive {
                    xs.push(x.as_slice());
                    ys.push(1.0);
                } else if l == negative {
                    xs.push(x.as_slice());
                    ys.push(-1.0);
                }
            }
            let pair_params = SvmParams {
                seed: params.seed.wrapping_add(pairs.len() as u64),
                ..*params
            };
            let model = train_binary_svm(&xs, &ys, &pair_params).map_err(|e| Error::Training {
                positive: classes[positive].clone(),
                negative: classes[negative].clone(),
                reason: alloc::format!("{e}"),
            })?;
            pairs.push(PairModel {
                positive,
                negative,
                model,
            });
        }
    }

    Ok(MulticlassSvmModel {
        classes: classes.to_vec(),
        pairs,
        normalization,
        feature_config,
        params: *params,
    })
}

/// Majority vote over the pairwise models; `x` is a raw feature vector.
pub fn predict(m: &MulticlassSvmModel, x: &FeatureVector) -> usize {
    m.tally(x).winner()
}

pub(crate) fn check_labelled_set(
    classes: &[String],
    features: &[FeatureVector],
    labels: &[usize],
) -> Result<()> {
    if classes.len() < 2 {
        return Err(Error::InvalidCorpus(
            "at least two classes are required".into(),
        ));
    }
    if features.len() != labels.len() {
        return Err(Error::InvalidParameter(
            "feature and label counts differ".into(),
        ));
    }
    let mut seen = vec![0usize; classes.len()];
    for &l in labels {
        match seen.get_mut(l) {
            Some(n) => *n += 1,
            None => return Err(Error::InvalidParameter("label index out of range".into())),
        }
    }
    if let Some(c) = seen.iter().position(|&n| n == 0) {
        return Err(Error::InvalidCorpus(alloc::format!(
            "class {} has no training samples",
            classes[c]
        )));
    }
    Ok(())
}
