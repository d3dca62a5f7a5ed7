//! Versioned line-oriented text format for trained models.
//!
//! Every float is written in scientific notation with 17 significant
//! digits, which parses back to the identical `f64`.
//!
//! ```text
//! glyphstroke-model 1
//! kind svm
//! op_order opening
//! se_fraction 6.9999999999999996e-1
//! classes 2
//! class zero 12
//! class one 12
//! norm_min <13 floats>
//! norm_max <13 floats>
//! kernel rbf 5.9999999999999998e-1
//! c 1.0000000000000000e1
//! tol 1.0000000000000000e-3
//! max_updates 100000
//! seed 0
//! pairs 1
//! pair 0 1 <bias> <converged 0|1> <support vector count>
//! sv <alpha> <sign> <13 floats>
//! end
//! ```
//!
//! Each `class` line carries the number of training samples of that class.
//! k-NN models replace the SVM block with `k <k>`, `vectors <n>` and one
//! `vector <class index> <13 floats>` line per training vector.

use std::fmt::Write as _;

use glyphstroke_core::classify::svm::SvmParams;
use glyphstroke_core::classify::{
    BinarySvmModel, KernelKind, KernelParams, KnnModel, MulticlassSvmModel, PairModel, TrainedModel,
};
use glyphstroke_core::features::{FeatureConfig, NormalizationStats, FEATURE_DIM};
use glyphstroke_core::morphology::{OpOrder, SeThreshold};

pub const MODEL_FORMAT_VERSION: u32 = 1;
const MAGIC: &str = "glyphstroke-model";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("unsupported model format version {found} (expected {expected})")]
    VersionMismatch { found: String, expected: u32 },
}

fn num(out: &mut String, x: f64) {
    write!(out, " {x:.16e}").unwrap();
}

fn nums(out: &mut String, xs: &[f64]) {
    for &x in xs {
        num(out, x);
    }
}

/// A trained model plus the per-class training counts shown in reports.
#[derive(Debug, Clone, PartialEq)]
pub struct SavedModel {
    pub model: TrainedModel,
    pub trained_counts: Vec<usize>,
}

/// Serializes a model.
pub fn write_model(saved: &SavedModel) -> String {
    let model = &saved.model;
    let mut out = format!("{MAGIC} {MODEL_FORMAT_VERSION}\n");
    writeln!(out, "kind {}", model.kind().name()).unwrap();
    let fc = model.feature_config();
    writeln!(out, "op_order {}", fc.op_order.name()).unwrap();
    out.push_str("se_fraction");
    num(&mut out, fc.fraction.fraction());
    out.push('\n');
    writeln!(out, "classes {}", model.classes().len()).unwrap();
    for (c, n) in model.classes().iter().zip(&saved.trained_counts) {
        writeln!(out, "class {c} {n}").unwrap();
    }
    let norm = match model {
        TrainedModel::Svm(m) => &m.normalization,
        TrainedModel::Knn(m) => &m.normalization,
    };
    out.push_str("norm_min");
    nums(&mut out, &norm.min);
    out.push_str("\nnorm_max");
    nums(&mut out, &norm.max);
    out.push('\n');

    match model {
        TrainedModel::Svm(m) => write_svm(&mut out, m),
        TrainedModel::Knn(m) => {
            writeln!(out, "k {}", m.k).unwrap();
            writeln!(out, "vectors {}", m.vectors.len()).unwrap();
            for (v, l) in m.vectors.iter().zip(&m.labels) {
                write!(out, "vector {l}").unwrap();
                nums(&mut out, v);
                out.push('\n');
            }
        }
    }
    out.push_str("end\n");
    out
}

fn write_svm(out: &mut String, m: &MulticlassSvmModel) {
    let p = &m.params;
    let kind = match p.kernel.kind {
        KernelKind::Rbf => "rbf",
        KernelKind::Linear => "linear",
    };
    write!(out, "kernel {kind}").unwrap();
    num(out, p.kernel.sigma);
    out.push_str("\nc");
    num(out, p.c);
    out.push_str("\ntol");
    num(out, p.tol);
    writeln!(out, "\nmax_updates {}", p.max_updates).unwrap();
    writeln!(out, "seed {}", p.seed).unwrap();
    writeln!(out, "pairs {}", m.pairs.len()).unwrap();
    for pair in &m.pairs {
        let b = &pair.model;
        write!(out, "pair {} {}", pair.positive, pair.negative).unwrap();
        num(out, b.bias);
        writeln!(
            out,
            " {} {}",
            u8::from(b.converged),
            b.support_vectors.len()
        )
        .unwrap();
        for ((sv, a), s) in b.support_vectors.iter().zip(&b.alphas).zip(&b.signs) {
            out.push_str("sv");
            num(out, *a);
            num(out, *s);
            nums(out, sv);
            out.push('\n');
        }
    }
}

/// One line split into space-separated tokens with their byte offsets.
struct Line<'a> {
    tokens: Vec<(usize, &'a str)>,
    end: usize,
    next: usize,
}

impl<'a> Line<'a> {
    fn err<T>(&self, i: usize, message: impl Into<String>) -> Result<T, ModelError> {
        let offset = self.tokens.get(i).map_or(self.end, |t| t.0);
        Err(ModelError::Parse {
            offset,
            message: message.into(),
        })
    }

    fn expect_len(&self, n: usize) -> Result<(), ModelError> {
        if self.tokens.len() < n {
            return self.err(self.tokens.len(), format!("expected {n} fields"));
        }
        if self.tokens.len() > n {
            return self.err(n, "unexpected trailing field");
        }
        Ok(())
    }

    fn str(&self, i: usize) -> Result<&'a str, ModelError> {
        match self.tokens.get(i) {
            Some(t) => Ok(t.1),
            None => self.err(i, "missing field"),
        }
    }

    fn parse<T: std::str::FromStr>(&self, i: usize, what: &str) -> Result<T, ModelError> {
        self.str(i)?
            .parse()
            .map_or_else(|_| self.err(i, format!("invalid {what}")), Ok)
    }

    fn floats(&self, from: usize) -> Result<[f64; FEATURE_DIM], ModelError> {
        let mut v = [0.0; FEATURE_DIM];
        for (k, x) in v.iter_mut().enumerate() {
            *x = self.parse(from + k, "number")?;
        }
        Ok(v)
    }
}

struct Reader<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Reader<'a> {
    /// Next line, which must start with `key`.
    fn line(&mut self, key: &str) -> Result<Line<'a>, ModelError> {
        if self.pos >= self.text.len() {
            return Err(ModelError::Parse {
                offset: self.pos,
                message: format!("unexpected end of file, expected `{key}`"),
            });
        }
        let rest = &self.text[self.pos..];
        let (body, next) = match rest.find('\n') {
            Some(i) => (&rest[..i], self.pos + i + 1),
            None => {
                return Err(ModelError::Parse {
                    offset: self.text.len(),
                    message: "unterminated line".into(),
                })
            }
        };
        let mut tokens = Vec::new();
        let mut offset = self.pos;
        for tok in body.split(' ') {
            tokens.push((offset, tok));
            offset += tok.len() + 1;
        }
        let line = Line {
            tokens,
            end: self.pos + body.len(),
            next,
        };
        if line.tokens[0].1 != key {
            return line.err(0, format!("expected `{key}`"));
        }
        self.pos = line.next;
        Ok(line)
    }

    fn count(&mut self, key: &str) -> Result<usize, ModelError> {
        let l = self.line(key)?;
        l.expect_len(2)?;
        l.parse(1, "count")
    }

    fn float(&mut self, key: &str) -> Result<f64, ModelError> {
        let l = self.line(key)?;
        l.expect_len(2)?;
        l.parse(1, "number")
    }

    fn vector(&mut self, key: &str) -> Result<[f64; FEATURE_DIM], ModelError> {
        let l = self.line(key)?;
        l.expect_len(1 + FEATURE_DIM)?;
        l.floats(1)
    }
}

/// Parses a model written by [`write_model`].
pub fn parse_model(text: &str) -> Result<SavedModel, ModelError> {
    let mut r = Reader { text, pos: 0 };
    let head = r.line(MAGIC)?;
    head.expect_len(2)?;
    if head.str(1)? != MODEL_FORMAT_VERSION.to_string() {
        return Err(ModelError::VersionMismatch {
            found: head.str(1)?.to_string(),
            expected: MODEL_FORMAT_VERSION,
        });
    }

    let kind = r.line("kind")?;
    kind.expect_len(2)?;
    let is_svm = match kind.str(1)? {
        "svm" => true,
        "knn" => false,
        _ => return kind.err(1, "unknown classifier kind"),
    };
    let order = r.line("op_order")?;
    order.expect_len(2)?;
    let op_order =
        OpOrder::from_name(order.str(1)?).or_else(|_| order.err(1, "unknown op order"))?;
    let at = r.pos;
    let fraction = SeThreshold::new(r.float("se_fraction")?).map_err(|e| ModelError::Parse {
        offset: at,
        message: e.to_string(),
    })?;
    let feature_config = FeatureConfig { fraction, op_order };

    let n_classes = r.count("classes")?;
    let mut classes = Vec::with_capacity(n_classes.min(1024));
    let mut trained_counts = Vec::with_capacity(n_classes.min(1024));
    for _ in 0..n_classes {
        let l = r.line("class")?;
        l.expect_len(3)?;
        if l.str(1)?.is_empty() {
            return l.err(1, "empty class name");
        }
        classes.push(l.str(1)?.to_string());
        trained_counts.push(l.parse(2, "count")?);
    }
    let normalization = NormalizationStats {
        min: r.vector("norm_min")?,
        max: r.vector("norm_max")?,
    };

    let model = if is_svm {
        let kl = r.line("kernel")?;
        kl.expect_len(3)?;
        let kind = match kl.str(1)? {
            "rbf" => KernelKind::Rbf,
            "linear" => KernelKind::Linear,
            _ => return kl.err(1, "unknown kernel"),
        };
        let kernel = KernelParams {
            kind,
            sigma: kl.parse(2, "number")?,
        };
        let c = r.float("c")?;
        let tol = r.float("tol")?;
        let max_updates = r.count("max_updates")?;
        let seed_line = r.line("seed")?;
        seed_line.expect_len(2)?;
        let seed = seed_line.parse(1, "seed")?;
        let params = SvmParams {
            c,
            kernel,
            tol,
            max_updates,
            seed,
        };

        let n_pairs = r.count("pairs")?;
        let mut pairs = Vec::with_capacity(n_pairs.min(4096));
        for _ in 0..n_pairs {
            let l = r.line("pair")?;
            l.expect_len(6)?;
            let positive: usize = l.parse(1, "class index")?;
            let negative: usize = l.parse(2, "class index")?;
            if positive >= n_classes || negative >= n_classes || positive == negative {
                return l.err(1, "class index out of range");
            }
            let bias = l.parse(3, "number")?;
            let converged = match l.str(4)? {
                "1" => true,
                "0" => false,
                _ => return l.err(4, "expected 0 or 1"),
            };
            let n_sv: usize = l.parse(5, "count")?;
            let mut model = BinarySvmModel {
                support_vectors: Vec::new(),
                alphas: Vec::new(),
                signs: Vec::new(),
                bias,
                c,
                kernel,
                converged,
            };
            for _ in 0..n_sv {
                let sv = r.line("sv")?;
                sv.expect_len(3 + FEATURE_DIM)?;
                model.alphas.push(sv.parse(1, "number")?);
                model.signs.push(sv.parse(2, "number")?);
                model.support_vectors.push(sv.floats(3)?.to_vec());
            }
            pairs.push(PairModel {
                positive,
                negative,
                model,
            });
        }
        TrainedModel::Svm(MulticlassSvmModel {
            classes,
            pairs,
            normalization,
            feature_config,
            params,
        })
    } else {
        let k = r.count("k")?;
        let n = r.count("vectors")?;
        let mut vectors = Vec::with_capacity(n.min(1 << 16));
        let mut labels = Vec::with_capacity(n.min(1 << 16));
        for _ in 0..n {
            let l = r.line("vector")?;
            l.expect_len(2 + FEATURE_DIM)?;
            let label: usize = l.parse(1, "class index")?;
            if label >= n_classes {
                return l.err(1, "class index out of range");
            }
            labels.push(label);
            vectors.push(l.floats(2)?);
        }
        if k == 0 || k > n {
            return Err(ModelError::Parse {
                offset: r.pos,
                message: "k must lie in 1..=vector count".into(),
            });
        }
        TrainedModel::Knn(KnnModel {
            classes,
            vectors,
            labels,
            k,
            normalization,
            feature_config,
        })
    };

    let end = r.line("end")?;
    end.expect_len(1)?;
    if r.pos != text.len() {
        return Err(ModelError::Parse {
            offset: r.pos,
            message: "trailing data after end".into(),
        });
    }
    Ok(SavedModel {
        model,
        trained_counts,
    })
}
