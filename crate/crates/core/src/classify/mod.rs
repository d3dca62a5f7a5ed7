//! Classifiers over normalized feature vectors.
//!
//! The main classifier is a one-vs-one ensemble of soft-margin kernel SVMs
//! trained with sequential minimal optimization ([`svm`]); a k-nearest
//! neighbour model ([`knn`]) serves as the baseline.

mod kernel;
pub mod knn;
mod multiclass;
pub mod svm;

pub use kernel::{kernel_eval, KernelKind, KernelParams};
pub use knn::{fit_knn, knn_classify, KnnModel};
pub use multiclass::{predict, train_multiclass, MulticlassSvmModel, PairModel, VoteTally};
pub use svm::{train_binary_svm, BinarySvmModel, SvmParams};

use alloc::string::String;

use crate::features::{FeatureConfig, FeatureVector};

/// Which classifier a trained model holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassifierKind {
    Svm,
    Knn,
}

impl ClassifierKind {
    pub fn name(self) -> &'static str {
        match self {
            ClassifierKind::Svm => "svm",
            ClassifierKind::Knn => "knn",
        }
    }
}

/// A trained model of either kind.
#[derive(Debug, Clone, PartialEq)]
pub enum TrainedModel {
    Svm(MulticlassSvmModel),
    Knn(KnnModel),
}

impl TrainedModel {
    pub fn kind(&self) -> ClassifierKind {
        match self {
            TrainedModel::Svm(_) => ClassifierKind::Svm,
            TrainedModel::Knn(_) => ClassifierKind::Knn,
        }
    }

    pub fn classes(&self) -> &[String] {
        match self {
            TrainedModel::Svm(m) => &m.classes,
            TrainedModel::Knn(m) => &m.classes,
        }
    }

    pub fn feature_config(&self) -> &FeatureConfig {
        match self {
            TrainedModel::Svm(m) => &m.feature_config,
            TrainedModel::Knn(m) => &m.feature_config,
        }
    }

    /// Predicted class index into [`TrainedModel::classes`] for a raw
    /// (unnormalized) feature vector.
    pub fn predict(&self, x: &FeatureVector) -> usize {
        match self {
            TrainedModel::Svm(m) => predict(m, x),
            TrainedModel::Knn(m) => knn_classify(m, x),
        }
    }
}
