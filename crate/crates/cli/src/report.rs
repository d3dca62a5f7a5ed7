//! Evaluation and sweep reports, as aligned text and as JSON.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

/// Parameters echoed into every report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub classifier: String,
    /// Absent in sweep reports, where it varies per entry.
    pub se_fraction: Option<f64>,
    pub op_order: String,
    pub sigma: Option<f64>,
    #[serde(rename = "C")]
    pub c: Option<f64>,
    pub k: Option<usize>,
    pub seed: u64,
    pub split_fraction: Option<f64>,
}

impl RunConfig {
    fn summary(&self) -> String {
        let mut s = format!("classifier {}", self.classifier);
        if let Some(f) = self.se_fraction {
            write!(s, "  se-fraction {f:.2}").unwrap();
        }
        write!(s, "  op-order {}", self.op_order).unwrap();
        if let Some(sigma) = self.sigma {
            write!(s, "  sigma {sigma}").unwrap();
        }
        if let Some(c) = self.c {
            write!(s, "  C {c}").unwrap();
        }
        if let Some(k) = self.k {
            write!(s, "  k {k}").unwrap();
        }
        write!(s, "  seed {}", self.seed).unwrap();
        if let Some(f) = self.split_fraction {
            write!(s, "  split {f}").unwrap();
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassRow {
    pub label: String,
    pub trained: usize,
    pub tested: usize,
    pub correct: usize,
    /// Percent correct; absent when the class had no test samples.
    pub accuracy: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub config: RunConfig,
    pub classes: Vec<ClassRow>,
    pub total_tested: usize,
    pub total_correct: usize,
    pub overall_accuracy: f64,
    /// `confusion[true][predicted]`, indexed like `classes`.
    pub confusion: Vec<Vec<usize>>,
}

fn percent(num: usize, den: usize) -> f64 {
    100.0 * num as f64 / den as f64
}

impl EvalReport {
    /// Builds a report from true and predicted class indices.
    ///
    /// # Panics
    /// If `truth` is empty, the two lists differ in length or an index is
    /// out of range.
    pub fn new(
        config: RunConfig,
        classes: &[String],
        trained: &[usize],
        truth: &[usize],
        predicted: &[usize],
    ) -> Self {
        assert!(!truth.is_empty() && truth.len() == predicted.len());
        let k = classes.len();
        let mut confusion = vec![vec![0usize; k]; k];
        for (&t, &p) in truth.iter().zip(predicted) {
            confusion[t][p] += 1;
        }
        let rows = classes
            .iter()
            .enumerate()
            .map(|(i, label)| {
                let tested: usize = confusion[i].iter().sum();
                let correct = confusion[i][i];
                ClassRow {
                    label: label.clone(),
                    trained: trained.get(i).copied().unwrap_or(0),
                    tested,
                    correct,
                    accuracy: (tested > 0).then(|| percent(correct, tested)),
                }
            })
            .collect();
        let total_correct = (0..k).map(|i| confusion[i][i]).sum();
        EvalReport {
            config,
            classes: rows,
            total_tested: truth.len(),
            total_correct,
            overall_accuracy: percent(total_correct, truth.len()),
            confusion,
        }
    }

    /// Checks overall accuracy against the confusion trace and row sums
    /// against tested counts, to 0.01.
    pub fn check_consistency(&self) -> Result<(), String> {
        let trace: usize = (0..self.confusion.len())
            .map(|i| self.confusion[i][i])
            .sum();
        let total: usize = self.confusion.iter().flatten().sum();
        if total != self.total_tested || total == 0 {
            return Err(format!(
                "confusion total {total} != tested {}",
                self.total_tested
            ));
        }
        let recomputed = percent(trace, total);
        if (recomputed - self.overall_accuracy).abs() > 0.01 {
            return Err(format!(
                "overall {} != 100 × trace / total = {recomputed}",
                self.overall_accuracy
            ));
        }
        for (row, class) in self.confusion.iter().zip(&self.classes) {
            if row.iter().sum::<usize>() != class.tested {
                return Err(format!("row sum for {} != tested count", class.label));
            }
            if let Some(acc) = class.accuracy {
                if !(0.0..=100.0).contains(&acc) {
                    return Err(format!("accuracy for {} out of range", class.label));
                }
            }
        }
        Ok(())
    }

    /// Aligned per-class table with an average line, then the confusion matrix.
    pub fn to_text(&self) -> String {
        let w = self
            .classes
            .iter()
            .map(|c| c.label.chars().count())
            .max()
            .unwrap_or(0)
            .max("Average".len());
        let mut s = format!("{}\n\n", self.config.summary());
        writeln!(
            s,
            "{:<w$}  {:>7}  {:>7}  {:>12}",
            "Class", "Trained", "Tested", "Accuracy (%)"
        )
        .unwrap();
        for c in &self.classes {
            let acc = c
                .accuracy
                .map_or_else(|| "-".to_string(), |a| format!("{a:.2}"));
            writeln!(
                s,
                "{:<w$}  {:>7}  {:>7}  {:>12}",
                c.label, c.trained, c.tested, acc
            )
            .unwrap();
        }
        let trained: usize = self.classes.iter().map(|c| c.trained).sum();
        writeln!(
            s,
            "{:<w$}  {:>7}  {:>7}  {:>12.2}",
            "Average", trained, self.total_tested, self.overall_accuracy
        )
        .unwrap();

        let cw = self
            .confusion
            .iter()
            .flatten()
            .map(|n| n.to_string().len())
            .max()
            .unwrap_or(1)
            .max(w);
        s.push_str("\nConfusion (rows: true class, columns: predicted)\n");
        write!(s, "{:<w$}", "").unwrap();
        for c in &self.classes {
            write!(s, " {:>cw$}", c.label).unwrap();
        }
        s.push('\n');
        for (c, row) in self.classes.iter().zip(&self.confusion) {
            write!(s, "{:<w$}", c.label).unwrap();
            for n in row {
                write!(s, " {n:>cw$}").unwrap();
            }
            s.push('\n');
        }
        s
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepEntry {
    pub fraction: f64,
    pub accuracy: Option<f64>,
    /// Failure message when this fraction could not be evaluated.
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub config: RunConfig,
    pub entries: Vec<SweepEntry>,
    pub best_fraction: Option<f64>,
}

impl SweepReport {
    /// Records the best fraction: highest accuracy, ties to the smaller fraction.
    pub fn new(config: RunConfig, entries: Vec<SweepEntry>) -> Self {
        let mut best: Option<(f64, f64)> = None;
        for e in &entries {
            if let Some(acc) = e.accuracy {
                let better = match best {
                    None => true,
                    Some((f, a)) => acc > a || (acc == a && e.fraction < f),
                };
                if better {
                    best = Some((e.fraction, acc));
                }
            }
        }
        SweepReport {
            config,
            entries,
            best_fraction: best.map(|b| b.0),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n\n", self.config.summary());
        writeln!(s, "{:>11}  {:>12}", "SE fraction", "Accuracy (%)").unwrap();
        for e in &self.entries {
            match (e.accuracy, &e.error) {
                (Some(a), _) => writeln!(s, "{:>11.2}  {a:>12.2}", e.fraction).unwrap(),
                (None, err) => writeln!(
                    s,
                    "{:>11.2}  {:>12}  {}",
                    e.fraction,
                    "failed",
                    err.as_deref().unwrap_or("")
                )
                .unwrap(),
            }
        }
        match self.best_fraction {
            Some(b) => writeln!(s, "best {b:.2}").unwrap(),
            None => s.push_str("best none\n"),
        }
        s
    }

    /// Two whitespace-separated columns, fraction and accuracy; failed
    /// fractions appear as comments.
    pub fn to_plot_data(&self) -> String {
        let mut s = String::from("# se_fraction accuracy_percent\n");
        for e in &self.entries {
            match e.accuracy {
                Some(a) => writeln!(s, "{:.2} {a:.2}", e.fraction).unwrap(),
                None => writeln!(s, "# {:.2} failed", e.fraction).unwrap(),
            }
        }
        s
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
