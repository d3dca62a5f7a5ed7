use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelKind {
    Rbf,
    Linear,
}

/// Kernel function and its width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelParams {
    pub kind: KernelKind,
    /// RBF width; ignored by the linear kernel.
    pub sigma: f64,
}

impl KernelParams {
    pub const DEFAULT_SIGMA: f64 = 0.6;

    pub fn rbf(sigma: f64) -> Result<Self> {
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(invalid("RBF sigma must be positive and finite"));
        }
        Ok(Self {
            kind: KernelKind::Rbf,
            sigma,
        })
    }

    pub fn linear() -> Self {
        Self {
            kind: KernelKind::Linear,
            sigma: 1.0,
        }
    }

    #[inline]
    pub fn eval(&self, x: &[f64], y: &[f64]) -> f64 {
        kernel_eval(x, y, self)
    }
}

impl Default for KernelParams {
    fn default() -> Self {
        Self {
            kind: KernelKind::Rbf,
            sigma: Self::DEFAULT_SIGMA,
        }
    }
}

/// `exp(−‖x − y‖² / (2σ²))` for RBF, `⟨x, y⟩` for linear.
pub fn kernel_eval(x: &[f64], y: &[f64], p: &KernelParams) -> f64 {
    debug_assert_eq!(x.len(), y.len());
    match p.kind {
        KernelKind::Rbf => {
            let d2: f64 = x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum();
            libm::exp(-d2 / (2.0 * p.sigma * p.sigma))
        }
        KernelKind::Linear => x.iter().zip(y).map(|(a, b)| a * b).sum(),
    }
}
