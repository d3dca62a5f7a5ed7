//! Soft-margin binary SVM trained by sequential minimal optimization.
//!
//! The trainer follows Platt's scheme: an outer loop alternates between
//! sweeps over all samples and sweeps over the non-bound multipliers, and
//! each KKT violator is paired with a second multiplier chosen by maximal
//! `|E1 − E2|`, then by a scan of the non-bound set, then by a scan of the
//! whole set. The scans start at a seeded random offset.
//!
//! Decision function: `f(x) = Σ αᵢ yᵢ K(xᵢ, x) + b`.

use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::KernelParams;
use crate::error::{invalid, Result};

/// Trainer settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvmParams {
    /// Box constraint.
    pub c: f64,
    pub kernel: KernelParams,
    /// KKT tolerance.
    pub tol: f64,
    /// Upper bound on successful pair updates.
    pub max_updates: usize,
    /// Seed for the scan offsets of the second-multiplier heuristic.
    pub seed: u64,
}

impl Default for SvmParams {
    fn default() -> Self {
        Self {
            c: 10.0,
            kernel: KernelParams::default(),
            tol: 1e-3,
            max_updates: 100_000,
            seed: 0,
        }
    }
}

impl SvmParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.c > 0.0 && self.c.is_finite()) {
            return Err(invalid("C must be positive and finite"));
        }
        if !(self.tol > 0.0) {
            return Err(invalid("tolerance must be positive"));
        }
        if let super::KernelKind::Rbf = self.kernel.kind {
            KernelParams::rbf(self.kernel.sigma)?;
        }
        Ok(())
    }
}

/// A trained two-class model; only multipliers with `α > 0` are kept.
#[derive(Debug, Clone, PartialEq)]
pub struct BinarySvmModel {
    pub support_vectors: Vec<Vec<f64>>,
    pub alphas: Vec<f64>,
    /// +1.0 or −1.0 per support vector.
    pub signs: Vec<f64>,
    pub bias: f64,
    pub c: f64,
    pub kernel: KernelParams,
    /// False when the update budget ran out or the final KKT audit failed.
    pub converged: bool,
}

impl BinarySvmModel {
    pub fn decision(&self, x: &[f64]) -> f64 {
        self.support_vectors
            .iter()
            .zip(self.alphas.iter().zip(&self.signs))
            .map(|(sv, (a, y))| a * y * self.kernel.eval(sv, x))
            .sum::<f64>()
            + self.bias
    }

    /// +1 or −1; a zero decision counts as positive.
    pub fn classify(&self, x: &[f64]) -> f64 {
        if self.decision(x) >= 0.0 {
            1.0
        } else {
            -1.0
        }
    }
}

/// Full dual solution, one multiplier per training sample.
#[derive(Debug, Clone, PartialEq)]
pub struct SmoSolution {
    pub alphas: Vec<f64>,
    pub bias: f64,
    pub updates: usize,
    /// The outer loop finished within the update budget.
    pub finished: bool,
}

impl SmoSolution {
    /// `f(xᵢ)` for training sample `i`, from the same samples the solver saw.
    pub fn decision_on<X: AsRef<[f64]>>(
        &self,
        samples: &[X],
        labels: &[f64],
        kernel: &KernelParams,
        x: &[f64],
    ) -> f64 {
        samples
            .iter()
            .zip(labels)
            .zip(&self.alphas)
            .filter(|(_, &a)| a > 0.0)
            .map(|((s, y), a)| a * y * kernel.eval(s.as_ref(), x))
            .sum::<f64>()
            + self.bias
    }
}

/// Indices of training samples violating the KKT conditions at `tol`:
/// `y·f ≥ 1 − tol` when `α = 0`, `|y·f − 1| ≤ tol` when `0 < α < C`, and
/// `y·f ≤ 1 + tol` when `α = C`.
pub fn kkt_violations<X: AsRef<[f64]>>(
    solution: &SmoSolution,
    samples: &[X],
    labels: &[f64],
    params: &SvmParams,
) -> Vec<usize> {
    let mut out = Vec::new();
    for (i, s) in samples.iter().enumerate() {
        let margin = labels[i] * solution.decision_on(samples, labels, &params.kernel, s.as_ref());
        let a = solution.alphas[i];
        let ok = if a <= 0.0 {
            margin >= 1.0 - params.tol
        } else if a >= params.c {
            margin <= 1.0 + params.tol
        } else {
            (margin - 1.0).abs() <= params.tol
        };
        if !ok {
            out.push(i);
        }
    }
    out
}

/// Trains a binary SVM. Labels must be +1.0 or −1.0 with both present.
pub fn train_binary_svm<X: AsRef<[f64]>>(
    samples: &[X],
    labels: &[f64],
    params: &SvmParams,
) -> Result<BinarySvmModel> {
    let solution = solve(samples, labels, params, &mut |_: &[f64]| {})?;
    Ok(into_model(&solution, samples, labels, params))
}

/// Runs SMO and returns the full multiplier vector. `observer` sees the
/// multipliers after every successful pair update.
pub fn solve<X: AsRef<[f64]>>(
    samples: &[X],
    labels: &[f64],
    params: &SvmParams,
    observer: &mut dyn FnMut(&[f64]),
) -> Result<SmoSolution> {
    params.validate()?;
    if samples.len() != labels.len() {
        return Err(invalid("sample and label counts differ"));
    }
    if labels.iter().any(|&y| y != 1.0 && y != -1.0) {
        return Err(invalid("labels must be +1 or -1"));
    }
    if !labels.contains(&1.0) || !labels.contains(&-1.0) {
        return Err(invalid("binary training needs samples of both signs"));
    }
    let dim = samples[0].as_ref().len();
    if samples.iter().any(|s| s.as_ref().len() != dim) {
        return Err(invalid("samples have differing dimensions"));
    }

    let mut smo = Smo::new(samples, labels, params);
    let finished = smo.run(observer);
    Ok(SmoSolution {
        alphas: smo.alpha,
        bias: smo.b,
        updates: smo.updates,
        finished,
    })
}

fn into_model<X: AsRef<[f64]>>(
    solution: &SmoSolution,
    samples: &[X],
    labels: &[f64],
    params: &SvmParams,
) -> BinarySvmModel {
    let converged =
        solution.finished && kkt_violations(solution, samples, labels, params).is_empty();
    let mut model = BinarySvmModel {
        support_vectors: Vec::new(),
        alphas: Vec::new(),
        signs: Vec::new(),
        bias: solution.bias,
        c: params.c,
        kernel: params.kernel,
        converged,
    };
    for (i, &a) in solution.alphas.iter().enumerate() {
        if a > 0.0 {
            model.support_vectors.push(samples[i].as_ref().to_vec());
            model.alphas.push(a);
            model.signs.push(labels[i]);
        }
    }
    model
}

/// Relative step threshold below which a pair update is rejected.
const STEP_EPS: f64 = 1e-9;
/// Multipliers this close to a bound snap onto it.
const BOUND_EPS: f64 = 1e-10;

struct Smo<'a> {
    n: usize,
    gram: Vec<f64>,
    y: &'a [f64],
    alpha: Vec<f64>,
    /// `Σⱼ αⱼ yⱼ K(i, j)` without the bias.
    g: Vec<f64>,
    b: f64,
    c: f64,
    tol: f64,
    max_updates: usize,
    updates: usize,
    rng: ChaCha8Rng,
}

impl<'a> Smo<'a> {
    fn new<X: AsRef<[f64]>>(samples: &[X], y: &'a [f64], params: &SvmParams) -> Self {
        let n = samples.len();
        let mut gram = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let k = params.kernel.eval(samples[i].as_ref(), samples[j].as_ref());
                gram[i * n + j] = k;
                gram[j * n + i] = k;
            }
        }
        Self {
            n,
            gram,
            y,
            alpha: vec![0.0; n],
            g: vec![0.0; n],
            b: 0.0,
            c: params.c,
            tol: params.tol,
            max_updates: params.max_updates,
            updates: 0,
            rng: ChaCha8Rng::seed_from_u64(params.seed),
        }
    }

    #[inline]
    fn k(&self, i: usize, j: usize) -> f64 {
        self.gram[i * self.n + j]
    }

    #[inline]
    fn err(&self, i: usize) -> f64 {
        self.g[i] + self.b - self.y[i]
    }

    fn is_free(&self, i: usize) -> bool {
        self.alpha[i] > 0.0 && self.alpha[i] < self.c
    }

    fn random_start(&mut self) -> usize {
        (self.rng.next_u64() % self.n as u64) as usize
    }

    /// Returns false when the update budget runs out.
    fn run(&mut self, observer: &mut dyn FnMut(&[f64])) -> bool {
        loop {
            if !self.platt_sweeps(observer) {
                return false;
            }
            // Platt's running bias is only a heuristic once every multiplier
            // sits at a bound; settle it from the KKT bias interval instead.
            let (lower, upper) = self.bias_interval();
            if lower.0 - upper.0 <= 2.0 * self.tol {
                self.b = 0.5 * (lower.0 + upper.0);
                return true;
            }
            if self.updates >= self.max_updates {
                return false;
            }
            if !self.take_step(lower.1, upper.1, observer) {
                self.b = 0.5 * (lower.0 + upper.0);
                return true;
            }
        }
    }

    /// Outer loop of Platt's scheme; false when the budget runs out.
    fn platt_sweeps(&mut self, observer: &mut dyn FnMut(&[f64])) -> bool {
        let mut examine_all = true;
        loop {
            let mut changed = 0usize;
            for i in 0..self.n {
                if self.updates >= self.max_updates {
                    return false;
                }
                if (examine_all || self.is_free(i)) && self.examine(i, observer) {
                    changed += 1;
                }
            }
            if examine_all {
                if changed == 0 {
                    return true;
                }
                examine_all = false;
            } else if changed == 0 {
                examine_all = true;
            }
        }
    }

    /// Tightest `(lower, upper)` bounds on the bias implied by the KKT
    /// conditions, each with the index that sets it. Every sample demands
    /// `b ≥ yᵢ − gᵢ` (α = 0 with y = +1, α = C with y = −1, or free) and/or
    /// `b ≤ yᵢ − gᵢ` (α = 0 with y = −1, α = C with y = +1, or free).
    fn bias_interval(&self) -> ((f64, usize), (f64, usize)) {
        let mut lower = (f64::NEG_INFINITY, 0);
        let mut upper = (f64::INFINITY, 0);
        for i in 0..self.n {
            let v = self.y[i] - self.g[i];
            let a = self.alpha[i];
            let free = a > 0.0 && a < self.c;
            let pos = self.y[i] > 0.0;
            let bounds_below = free || (a <= 0.0 && pos) || (a >= self.c && !pos);
            let bounds_above = free || (a <= 0.0 && !pos) || (a >= self.c && pos);
            if bounds_below && v > lower.0 {
                lower = (v, i);
            }
            if bounds_above && v < upper.0 {
                upper = (v, i);
            }
        }
        (lower, upper)
    }

    fn examine(&mut self, i2: usize, observer: &mut dyn FnMut(&[f64])) -> bool {
        let e2 = self.err(i2);
        let r2 = e2 * self.y[i2];
        let a2 = self.alpha[i2];
        if !((r2 < -self.tol && a2 < self.c) || (r2 > self.tol && a2 > 0.0)) {
            return false;
        }

        let free: Vec<usize> = (0..self.n).filter(|&i| self.is_free(i)).collect();
        if free.len() > 1 {
            let mut best = None;
            let mut best_gap = -1.0;
            for &i in &free {
                let gap = (self.err(i) - e2).abs();
                if gap > best_gap {
                    best_gap = gap;
                    best = Some(i);
                }
            }
            if let Some(i1) = best {
                if self.take_step(i1, i2, observer) {
                    return true;
                }
            }
        }
        if !free.is_empty() {
            let start = self.random_start() % free.len();
            for k in 0..free.len() {
                let i1 = free[(start + k) % free.len()];
                if self.take_step(i1, i2, observer) {
                    return true;
                }
            }
        }
        let start = self.random_start();
        for k in 0..self.n {
            let i1 = (start + k) % self.n;
            if self.take_step(i1, i2, observer) {
                return true;
            }
        }
        false
    }

    fn take_step(&mut self, i1: usize, i2: usize, observer: &mut dyn FnMut(&[f64])) -> bool {
        if i1 == i2 {
            return false;
        }
        let (y1, y2) = (self.y[i1], self.y[i2]);
        let (alph1, alph2) = (self.alpha[i1], self.alpha[i2]);
        let (e1, e2) = (self.err(i1), self.err(i2));
        let s = y1 * y2;
        let c = self.c;

        let (lo, hi) = if s < 0.0 {
            ((alph2 - alph1).max(0.0), (c + alph2 - alph1).min(c))
        } else {
            ((alph1 + alph2 - c).max(0.0), (alph1 + alph2).min(c))
        };
        if hi - lo <= 0.0 {
            return false;
        }

        let (k11, k12, k22) = (self.k(i1, i1), self.k(i1, i2), self.k(i2, i2));
        let eta = k11 + k22 - 2.0 * k12;
        let mut a2 = if eta > 0.0 {
            (alph2 + y2 * (e1 - e2) / eta).clamp(lo, hi)
        } else {
            // objective (to minimize) at both ends of the feasible segment
            let f1 = y1 * self.g[i1] - 1.0 - alph1 * k11 - s * alph2 * k12;
            let f2 = y2 * self.g[i2] - 1.0 - s * alph1 * k12 - alph2 * k22;
            let psi = |a2: f64| {
                let a1 = alph1 + s * (alph2 - a2);
                a1 * f1 + a2 * f2 + 0.5 * a1 * a1 * k11 + 0.5 * a2 * a2 * k22 + s * a2 * a1 * k12
            };
            let (psi_lo, psi_hi) = (psi(lo), psi(hi));
            if psi_lo < psi_hi - STEP_EPS {
                lo
            } else if psi_lo > psi_hi + STEP_EPS {
                hi
            } else {
                alph2
            }
        };
        if a2 < BOUND_EPS {
            a2 = 0.0;
        } else if a2 > c - BOUND_EPS {
            a2 = c;
        }
        if (a2 - alph2).abs() < STEP_EPS * (a2 + alph2 + STEP_EPS) {
            return false;
        }
        let mut a1 = alph1 + s * (alph2 - a2);
        if a1 < BOUND_EPS {
            a1 = 0.0;
        } else if a1 > c - BOUND_EPS {
            a1 = c;
        }

        let d1 = y1 * (a1 - alph1);
        let d2 = y2 * (a2 - alph2);
        let b1 = self.b - e1 - d1 * k11 - d2 * k12;
        let b2 = self.b - e2 - d1 * k12 - d2 * k22;
        self.b = if a1 > 0.0 && a1 < c {
            b1
        } else if a2 > 0.0 && a2 < c {
            b2
        } else {
            0.5 * (b1 + b2)
        };

        for k in 0..self.n {
            self.g[k] += d1 * self.gram[i1 * self.n + k] + d2 * self.gram[i2 * self.n + k];
        }
        self.alpha[i1] = a1;
        self.alpha[i2] = a2;
        self.updates += 1;
        observer(&self.alpha);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn linear_params(c: f64) -> SvmParams {
        SvmParams {
            c,
            kernel: KernelParams::linear(),
            ..SvmParams::default()
        }
    }

    #[test]
    fn two_points_give_midpoint_boundary() {
        let xs = [[0.0], [1.0]];
        let ys = [-1.0, 1.0];
        let m = train_binary_svm(&xs, &ys, &linear_params(1e4)).unwrap();
        assert!(m.converged);
        assert_eq!(m.support_vectors.len(), 2);
        // boundary where decision crosses zero: w = 2, b = −1
        assert!(m.decision(&[0.5]).abs() < 1e-3);
        assert_eq!(m.classify(&[0.0]), -1.0);
        assert_eq!(m.classify(&[1.0]), 1.0);
    }

    #[test]
    fn contradictory_duplicates_hit_the_box() {
        let xs = [[0.3, 0.7], [0.3, 0.7]];
        let ys = [1.0, -1.0];
        let params = SvmParams::default();
        let sol = solve(&xs, &ys, &params, &mut |_: &[f64]| {}).unwrap();
        assert_eq!(sol.alphas, vec![params.c, params.c]);
        let m = train_binary_svm(&xs, &ys, &params).unwrap();
        assert_eq!(m.alphas.len(), 2);
    }

    #[test]
    fn rejects_single_class_and_bad_labels() {
        let xs = [[0.0], [1.0]];
        assert!(train_binary_svm(&xs, &[1.0, 1.0], &SvmParams::default()).is_err());
        assert!(train_binary_svm(&xs, &[1.0, 0.0], &SvmParams::default()).is_err());
        let bad_c = SvmParams {
            c: 0.0,
            ..SvmParams::default()
        };
        assert!(train_binary_svm(&xs, &[1.0, -1.0], &bad_c).is_err());
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let xs: Vec<[f64; 1]> = (0..20).map(|i| [i as f64 / 19.0]).collect();
        let ys: Vec<f64> = (0..20)
            .map(|i| if i % 2 == 0 { 1.0 } else { -1.0 })
            .collect();
        let params = SvmParams {
            max_updates: 1,
            ..SvmParams::default()
        };
        let m = train_binary_svm(&xs, &ys, &params).unwrap();
        assert!(!m.converged);
    }
}
