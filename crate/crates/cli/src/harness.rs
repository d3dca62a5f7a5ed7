//! Train, evaluate and sweep over a loaded corpus.

use glyphstroke_core::classify::{
    fit_knn, train_multiclass, ClassifierKind, SvmParams, TrainedModel,
};
use glyphstroke_core::corpus::{split_indices, Sample, SplitSpec};
use glyphstroke_core::features::{extract_features, FeatureConfig, FeatureVector};
use glyphstroke_core::morphology::SeThreshold;

use crate::error::{Error, Result};
use crate::manifest::Corpus;
use crate::model_file::SavedModel;
use crate::report::{EvalReport, RunConfig, SweepEntry, SweepReport};

/// Everything that determines a train/evaluate run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunOptions {
    pub classifier: ClassifierKind,
    pub features: FeatureConfig,
    pub svm: SvmParams,
    pub k: usize,
    pub split: SplitSpec,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            classifier: ClassifierKind::Svm,
            features: FeatureConfig::default(),
            svm: SvmParams::default(),
            k: glyphstroke_core::classify::knn::DEFAULT_K,
            split: SplitSpec::default(),
        }
    }
}

impl RunOptions {
    pub fn config_echo(&self, with_split: bool) -> RunConfig {
        let svm = self.classifier == ClassifierKind::Svm;
        RunConfig {
            classifier: self.classifier.name().to_string(),
            se_fraction: Some(self.features.fraction.fraction()),
            op_order: self.features.op_order.name().to_string(),
            sigma: svm.then_some(self.svm.kernel.sigma),
            c: svm.then_some(self.svm.c),
            k: (!svm).then_some(self.k),
            seed: self.split.seed,
            split_fraction: with_split.then_some(self.split.train_fraction),
        }
    }
}

/// Feature vectors for every sample, in order.
pub fn extract_all(samples: &[Sample], config: &FeatureConfig) -> Result<Vec<FeatureVector>> {
    samples
        .iter()
        .map(|s| extract_features(&s.image, config).map_err(Error::Core))
        .collect()
}

/// Index of each sample's label in `classes`.
pub fn class_indices(classes: &[String], samples: &[Sample]) -> Result<Vec<usize>> {
    samples
        .iter()
        .map(|s| {
            classes
                .iter()
                .position(|c| *c == s.label)
                .ok_or_else(|| Error::UnknownClass(s.label.clone()))
        })
        .collect()
}

/// Trains the configured classifier on labelled feature vectors.
pub fn train_on_features(
    classes: &[String],
    features: &[FeatureVector],
    labels: &[usize],
    opts: &RunOptions,
) -> Result<SavedModel> {
    let model = match opts.classifier {
        ClassifierKind::Svm => TrainedModel::Svm(train_multiclass(
            classes,
            features,
            labels,
            &opts.svm,
            opts.features,
        )?),
        ClassifierKind::Knn => {
            TrainedModel::Knn(fit_knn(classes, features, labels, opts.k, opts.features)?)
        }
    };
    let mut trained_counts = vec![0; classes.len()];
    for &l in labels {
        trained_counts[l] += 1;
    }
    Ok(SavedModel {
        model,
        trained_counts,
    })
}

/// Evaluates `saved` on labelled feature vectors.
pub fn evaluate_features(
    saved: &SavedModel,
    features: &[FeatureVector],
    labels: &[usize],
    config: RunConfig,
) -> Result<EvalReport> {
    if features.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let predicted: Vec<usize> = features.iter().map(|f| saved.model.predict(f)).collect();
    Ok(EvalReport::new(
        config,
        saved.model.classes(),
        &saved.trained_counts,
        labels,
        &predicted,
    ))
}

/// Extracts features with the model's own settings and evaluates every sample.
pub fn evaluate_samples(
    saved: &SavedModel,
    samples: &[Sample],
    config: RunConfig,
) -> Result<EvalReport> {
    let labels = class_indices(saved.model.classes(), samples)?;
    let features = extract_all(samples, saved.model.feature_config())?;
    evaluate_features(saved, &features, &labels, config)
}

/// Splits the corpus, trains on one half and evaluates on the other.
pub fn train_and_evaluate(corpus: &Corpus, opts: &RunOptions) -> Result<(SavedModel, EvalReport)> {
    let labels = corpus.label_indices();
    let (train, test) = split_indices(&corpus.samples, &opts.split)?;
    let features = extract_all(&corpus.samples, &opts.features)?;
    run_split(&corpus.classes, &features, &labels, &train, &test, opts)
}

fn run_split(
    classes: &[String],
    features: &[FeatureVector],
    labels: &[usize],
    train: &[usize],
    test: &[usize],
    opts: &RunOptions,
) -> Result<(SavedModel, EvalReport)> {
    let pick = |idx: &[usize]| -> (Vec<FeatureVector>, Vec<usize>) {
        idx.iter().map(|&i| (features[i], labels[i])).unzip()
    };
    let (train_x, train_y) = pick(train);
    let (test_x, test_y) = pick(test);
    let saved = train_on_features(classes, &train_x, &train_y, opts)?;
    let report = evaluate_features(&saved, &test_x, &test_y, opts.config_echo(true))?;
    Ok((saved, report))
}

/// Runs the train/evaluate cycle once per SE fraction on one fixed split.
///
/// A fraction that fails is recorded in its entry and the sweep goes on.
pub fn sweep(corpus: &Corpus, fractions: &[f64], opts: &RunOptions) -> Result<SweepReport> {
    if fractions.is_empty() {
        return Err(Error::Usage("the fraction list is empty".into()));
    }
    let thresholds = fractions
        .iter()
        .map(|&f| SeThreshold::new(f).map_err(Error::Core))
        .collect::<Result<Vec<_>>>()?;
    let labels = corpus.label_indices();
    let (train, test) = split_indices(&corpus.samples, &opts.split)?;

    let mut entries = Vec::with_capacity(fractions.len());
    for (&fraction, &threshold) in fractions.iter().zip(&thresholds) {
        let run = RunOptions {
            features: FeatureConfig {
                fraction: threshold,
                ..opts.features
            },
            ..*opts
        };
        let outcome = extract_all(&corpus.samples, &run.features).and_then(|features| {
            run_split(&corpus.classes, &features, &labels, &train, &test, &run)
        });
        entries.push(match outcome {
            Ok((_, report)) => SweepEntry {
                fraction,
                accuracy: Some(report.overall_accuracy),
                error: None,
            },
            Err(e) => SweepEntry {
                fraction,
                accuracy: None,
                error: Some(e.to_string()),
            },
        });
    }
    let mut config = opts.config_echo(true);
    config.se_fraction = None;
    Ok(SweepReport::new(config, entries))
}
