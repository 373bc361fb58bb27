use crate::{Error, Result};

use super::Scheme;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McConfig {
    pub n_paths: usize,
    pub steps_per_unit_time: usize,
    pub seed: u64,
    pub scheme: Scheme,
}

impl Default for McConfig {
    fn default() -> Self {
        Self {
            n_paths: 100_000,
            steps_per_unit_time: 400,
            seed: 42,
            scheme: Scheme::FullTruncation,
        }
    }
}

impl McConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_paths < 2 {
            return Err(Error::OutOfRange("n_paths"));
        }
        if self.steps_per_unit_time < 1 {
            return Err(Error::OutOfRange("steps_per_unit_time"));
        }
        Ok(())
    }

    /// Number of uniform steps covering `[0, t]`.
    pub fn steps_for(&self, t: f64) -> usize {
        (libm::ceil(self.steps_per_unit_time as f64 * t) as usize).max(1)
    }
}

/// Sample mean with standard error `sample_std / sqrt(n_paths)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub n_paths: usize,
    pub seed: u64,
}

impl McEstimate {
    /// Welford's recurrence over `samples` in slice order.
    pub fn from_samples(samples: &[f64], seed: u64) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::OutOfRange("n_paths"));
        }
        let mut mean = 0.0;
        let mut m2 = 0.0;
        for (i, &x) in samples.iter().enumerate() {
            let delta = x - mean;
            mean += delta / (i + 1) as f64;
            m2 += delta * (x - mean);
        }
        let n = samples.len() as f64;
        let var = (m2 / (n - 1.0)).max(0.0);
        Ok(Self {
            mean,
            std_error: libm::sqrt(var / n),
            n_paths: samples.len(),
            seed,
        })
    }

    /// `|self - other| <= k sqrt(se1^2 + se2^2)`.
    pub fn agrees_with(&self, other: &McEstimate, k: f64) -> bool {
        (self.mean - other.mean).abs() <= k * libm::hypot(self.std_error, other.std_error)
    }
}
