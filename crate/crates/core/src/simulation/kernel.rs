use alloc::vec::Vec;

use super::VariancePath;
use crate::model::TimeGrid;
use crate::special::gamma_pos;
use crate::{Error, Result};

/// Product-integration weights of a power kernel on a grid ending at `t`.
///
/// `w_k = [(t - s_k)^p - (t - s_{k+1})^p] / Gamma(p + 1)`, so that
/// `sum_k w_k V_k = int_0^t (t - s)^(p-1) V(s) ds / Gamma(p)` exactly for the
/// piecewise-constant (left endpoint) interpolant of `V`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelWeights {
    power: f64,
    weights: Vec<f64>,
}

impl KernelWeights {
    /// Weights for order `power > 0`.
    pub fn new(grid: &TimeGrid, power: f64) -> Result<Self> {
        if !(power > 0.0) {
            return Err(Error::OutOfRange("power"));
        }
        let nodes = grid.nodes();
        let t = grid.last();
        let g = gamma_pos(power + 1.0);
        let weights = nodes
            .windows(2)
            .map(|w| (libm::pow(t - w[0], power) - libm::pow(t - w[1], power)) / g)
            .collect();
        Ok(Self { power, weights })
    }

    pub fn power(&self) -> f64 {
        self.power
    }

    /// `sum_k w_k values[k]` over the left endpoints.
    pub fn apply(&self, values: &[f64]) -> f64 {
        self.weights.iter().zip(values).map(|(w, v)| w * v).sum()
    }
}

/// `eta t + int_0^t (t-s)^d V_s ds / Gamma(d+1)`, i.e. `int_0^t V^d_s ds`,
/// by product integration against the left-endpoint values of `path`.
pub fn integrated_frac_variance(path: &VariancePath, d: f64, eta: f64, t: f64) -> Result<f64> {
    let last = path.grid.last();
    if (t - last).abs() > 1e-12 * last.max(1.0) {
        return Err(Error::GridMismatch);
    }
    if !(-0.5..=0.5).contains(&d) {
        return Err(Error::OutOfRange("d"));
    }
    let w = KernelWeights::new(&path.grid, d + 1.0)?;
    Ok(eta * t + w.apply(&path.values))
}
