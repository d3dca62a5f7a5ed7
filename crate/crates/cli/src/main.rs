use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use glyphstroke::harness::{self, RunOptions};
use glyphstroke::manifest::{load_corpus, sha256_hex, Corpus, Manifest, ManifestEntry};
use glyphstroke::model_file::{parse_model, write_model};
use glyphstroke::report::RunConfig;
use glyphstroke::{feature_csv, pnm, write_atomic, Error, Result};
use glyphstroke_core::classify::svm::SvmParams;
use glyphstroke_core::classify::{ClassifierKind, KernelParams, TrainedModel};
use glyphstroke_core::corpus::{synth_variants, SplitSpec, SynthConfig};
use glyphstroke_core::features::FeatureConfig;
use glyphstroke_core::morphology::{OpOrder, SeThreshold};

/// Directional-stroke glyph recognition: features, training, evaluation
/// and structuring-element sweeps.
#[derive(Parser)]
#[command(name = "glyphstroke", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the feature table of every sample as CSV.
    Features {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        features: FeatureArgs,
        /// Output CSV path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Train on one half of a split and evaluate on the other.
    Train {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        features: FeatureArgs,
        #[command(flatten)]
        model: ModelArgs,
        /// Model file to write.
        #[arg(long)]
        out: PathBuf,
        /// JSON report path [default: <out>.report.json].
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Evaluate a saved model on every sample of a manifest.
    Eval {
        /// Model file written by `train`.
        #[arg(long)]
        model: PathBuf,
        #[command(flatten)]
        corpus: CorpusArgs,
        /// JSON report path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Train and evaluate once per SE fraction on a single fixed split.
    Sweep {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, value_enum, default_value_t = OpOrderArg::Opening)]
        op_order: OpOrderArg,
        /// Comma-separated SE fractions.
        #[arg(long, value_delimiter = ',', default_value = "0.3,0.4,0.5,0.6,0.7,0.8")]
        fractions: Vec<f64>,
        /// JSON report path.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Two-column plot data path.
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Generate size (and noise) variants of every sample as a new corpus.
    Synth {
        #[command(flatten)]
        corpus: CorpusArgs,
        /// Comma-separated point sizes in [8, 100].
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<u32>,
        /// Add 1% salt-and-pepper noise followed by a median filter.
        #[arg(long)]
        noise: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Glyph height in pixels at 16 pt.
        #[arg(long, default_value_t = 24.0)]
        baseline_px: f64,
        /// Output directory for images and manifest.json.
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct CorpusArgs {
    /// Corpus manifest (JSON).
    #[arg(long)]
    manifest: PathBuf,
    /// Keep only samples of this style; repeatable.
    #[arg(long = "style")]
    styles: Vec<String>,
    /// Skip unreadable samples instead of failing.
    #[arg(long)]
    lenient: bool,
}

#[derive(Args)]
struct FeatureArgs {
    /// SE length as a fraction of glyph height.
    #[arg(long, default_value_t = 0.7)]
    se_fraction: f64,
    #[arg(long, value_enum, default_value_t = OpOrderArg::Opening)]
    op_order: OpOrderArg,
}

#[derive(Args)]
struct ModelArgs {
    #[arg(long, value_enum, default_value_t = ClassifierArg::Svm)]
    classifier: ClassifierArg,
    #[arg(long, value_enum, default_value_t = KernelArg::Rbf)]
    kernel: KernelArg,
    /// RBF kernel width.
    #[arg(long, default_value_t = 0.6)]
    sigma: f64,
    /// SVM soft-margin penalty.
    #[arg(long = "C", default_value_t = 10.0)]
    c: f64,
    /// Neighbours for k-NN.
    #[arg(long, default_value_t = 3)]
    k: usize,
    /// Seed for the split and the SVM solver.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Fraction of each class used for training.
    #[arg(long, default_value_t = 0.5)]
    split_fraction: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum OpOrderArg {
    Opening,
    Closing,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassifierArg {
    Svm,
    Knn,
}

#[derive(Clone, Copy, ValueEnum)]
enum KernelArg {
    Rbf,
    Linear,
}

impl OpOrderArg {
    fn get(self) -> OpOrder {
        match self {
            OpOrderArg::Opening => OpOrder::Opening,
            OpOrderArg::Closing => OpOrder::Closing,
        }
    }
}

impl FeatureArgs {
    fn config(&self) -> Result<FeatureConfig> {
        Ok(FeatureConfig {
            fraction: SeThreshold::new(self.se_fraction)?,
            op_order: self.op_order.get(),
        })
    }
}

impl ModelArgs {
    fn options(&self, features: FeatureConfig) -> Result<RunOptions> {
        let kernel = match self.kernel {
            KernelArg::Rbf => KernelParams::rbf(self.sigma)?,
            KernelArg::Linear => KernelParams::linear(),
        };
        let svm = SvmParams {
            c: self.c,
            kernel,
            seed: self.seed,
            ..SvmParams::default()
        };
        svm.validate()?;
        if self.k == 0 {
            return Err(Error::Usage("--k must be at least 1".into()));
        }
        if !(self.split_fraction > 0.0 && self.split_fraction < 1.0) {
            return Err(Error::Usage("--split-fraction must lie in (0, 1)".into()));
        }
        Ok(RunOptions {
            classifier: match self.classifier {
                ClassifierArg::Svm => ClassifierKind::Svm,
                ClassifierArg::Knn => ClassifierKind::Knn,
            },
            features,
            svm,
            k: self.k,
            split: SplitSpec {
                train_fraction: self.split_fraction,
                seed: self.seed,
                stratified: true,
            },
        })
    }
}

impl CorpusArgs {
    fn load(&self) -> Result<Corpus> {
        let mut corpus = load_corpus(&self.manifest, self.lenient)?;
        for skipped in &corpus.skipped {
            eprintln!("warning: skipped {skipped}");
        }
        corpus.retain_styles(&self.styles);
        if corpus.samples.is_empty() {
            return Err(Error::EmptyCorpus);
        }
        Ok(corpus)
    }
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => write_atomic(p, text.as_bytes()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn warn_unconverged(model: &TrainedModel) {
    if let TrainedModel::Svm(m) = model {
        for p in m.pairs.iter().filter(|p| !p.model.converged) {
            eprintln!(
                "warning: pair {} vs {} stopped before reaching the KKT tolerance",
                m.classes[p.positive], m.classes[p.negative]
            );
        }
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Features {
            corpus,
            features,
            out,
        } => {
            let config = features.config()?;
            let corpus = corpus.load()?;
            let vectors = harness::extract_all(&corpus.samples, &config)?;
            let csv = feature_csv::features_csv(&corpus.samples, &vectors)?;
            write_or_print(out.as_deref(), &csv)
        }
        Command::Train {
            corpus,
            features,
            model,
            out,
            report,
        } => {
            let opts = model.options(features.config()?)?;
            let corpus = corpus.load()?;
            let (saved, eval) = harness::train_and_evaluate(&corpus, &opts)?;
            warn_unconverged(&saved.model);
            write_atomic(&out, write_model(&saved).as_bytes())?;
            let report_path = report.unwrap_or_else(|| {
                let mut p = out.clone().into_os_string();
                p.push(".report.json");
                p.into()
            });
            write_atomic(&report_path, eval.to_json().as_bytes())?;
            print!("{}", eval.to_text());
            Ok(())
        }
        Command::Eval { model, corpus, out } => {
            let text = std::fs::read_to_string(&model).map_err(|e| Error::Io {
                path: model.clone(),
                source: e,
            })?;
            let saved = parse_model(&text)?;
            let corpus = corpus.load()?;
            let config = eval_config(&saved.model);
            let eval = harness::evaluate_samples(&saved, &corpus.samples, config)?;
            if let Some(p) = &out {
                write_atomic(p, eval.to_json().as_bytes())?;
            }
            print!("{}", eval.to_text());
            Ok(())
        }
        Command::Sweep {
            corpus,
            model,
            op_order,
            fractions,
            out,
            plot,
        } => {
            let features = FeatureConfig {
                op_order: op_order.get(),
                ..FeatureConfig::default()
            };
            let opts = model.options(features)?;
            let corpus = corpus.load()?;
            let report = harness::sweep(&corpus, &fractions, &opts)?;
            if let Some(p) = &out {
                write_atomic(p, report.to_json().as_bytes())?;
            }
            if let Some(p) = &plot {
                write_atomic(p, report.to_plot_data().as_bytes())?;
            }
            print!("{}", report.to_text());
            Ok(())
        }
        Command::Synth {
            corpus,
            sizes,
            noise,
            seed,
            baseline_px,
            out,
        } => {
            if !(baseline_px > 0.0) {
                return Err(Error::Usage("--baseline-px must be positive".into()));
            }
            let corpus = corpus.load()?;
            let config = SynthConfig {
                baseline_px,
                noise,
                seed,
                ..SynthConfig::default()
            };
            std::fs::create_dir_all(&out).map_err(|e| Error::Io {
                path: out.clone(),
                source: e,
            })?;
            let mut entries = Vec::new();
            for sample in &corpus.samples {
                for variant in synth_variants(sample, &sizes, &config)? {
                    let name = format!("{}.pbm", variant.id.replace(['/', '\\'], "_"));
                    let bytes = pnm::write_pbm(&variant.image);
                    write_atomic(&out.join(&name), &bytes)?;
                    entries.push(ManifestEntry {
                        sha256: sha256_hex(&bytes),
                        path: name,
                        label: variant.label,
                        style: variant.style,
                        size_pt: variant.size_pt,
                    });
                }
            }
            let manifest = Manifest {
                version: glyphstroke::manifest::MANIFEST_VERSION,
                classes: corpus.classes,
                samples: entries,
            };
            write_atomic(&out.join("manifest.json"), manifest.to_json().as_bytes())?;
            eprintln!(
                "wrote {} samples to {}",
                manifest.samples.len(),
                out.display()
            );
            Ok(())
        }
    }
}

fn eval_config(model: &TrainedModel) -> RunConfig {
    let fc = model.feature_config();
    let (sigma, c, k, seed) = match model {
        TrainedModel::Svm(m) => (
            Some(m.params.kernel.sigma),
            Some(m.params.c),
            None,
            m.params.seed,
        ),
        TrainedModel::Knn(m) => (None, None, Some(m.k), 0),
    };
    RunConfig {
        classifier: model.kind().name().to_string(),
        se_fraction: Some(fc.fraction.fraction()),
        op_order: fc.op_order.name().to_string(),
        sigma,
        c,
        k,
        seed,
        split_fraction: None,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
