//! Power-series solution of the driftless (`kappa = 0`) Riccati equation.
//!
//! `B(t) = t^-1 sum_{i>=1} alpha_i (zeta t^(d+2))^i` with
//! `zeta = u(1-u) / (2 Gamma(d+2))`, `alpha_1 = 1` and
//! `alpha_i = -xi^2 / (2 (i(d+2) - 1)) sum_{k=1}^{i-1} alpha_k alpha_{i-k}`.

use alloc::vec::Vec;

use crate::model::ModelParams;
use crate::special::gamma_pos;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesCoefficients {
    /// `alpha[0]` holds `alpha_1`.
    pub alpha: Vec<f64>,
    pub zeta: f64,
}

impl SeriesCoefficients {
    pub fn new(xi: f64, d: f64, u: f64, n_terms: usize) -> Self {
        let mut alpha: Vec<f64> = Vec::with_capacity(n_terms);
        for i in 1..=n_terms {
            if i == 1 {
                alpha.push(1.0);
                continue;
            }
            let conv: f64 = (1..i).map(|k| alpha[k - 1] * alpha[i - k - 1]).sum();
            let denom = 2.0 * (i as f64 * (d + 2.0) - 1.0);
            alpha.push(-xi * xi / denom * conv);
        }
        Self {
            alpha,
            zeta: u * (1.0 - u) / (2.0 * gamma_pos(d + 2.0)),
        }
    }

    /// `sum_i alpha_i x^i`.
    pub fn eval(&self, x: f64) -> f64 {
        self.alpha.iter().rev().fold(0.0, |acc, &a| (acc + a) * x)
    }

    /// `sum_i (-1)^(i+1) alpha_i (u^2/2)^i`, the scaled small-time limit of
    /// `-B / v0` when `d = eta = kappa = 0`.
    pub fn small_time_limit(&self, u: f64) -> f64 {
        -self.eval(-0.5 * u * u)
    }
}

/// Partial sum of the series for `B(t)` with `n_terms` terms.
///
/// Requires `kappa = 0` and `|zeta t^(d+2)| < 1/4`.
pub fn series_b_kappa0(p: &ModelParams, u: f64, t: f64, n_terms: usize) -> Result<f64> {
    if p.kappa() != 0.0 {
        return Err(Error::OutOfRange("kappa"));
    }
    if !(t > 0.0) {
        return Err(Error::OutOfRange("t"));
    }
    if n_terms == 0 {
        return Err(Error::OutOfRange("n_terms"));
    }
    let coeffs = SeriesCoefficients::new(p.xi(), p.d(), u, n_terms);
    let x = coeffs.zeta * libm::pow(t, p.d() + 2.0);
    if !(x.abs() < 0.25) {
        return Err(Error::OutOfRange("t"));
    }
    Ok(coeffs.eval(x) / t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_coefficients() {
        let xi = 0.7;
        for d in [-0.3, 0.0, 0.2] {
            let c = SeriesCoefficients::new(xi, d, 0.5, 4);
            assert_eq!(c.alpha[0], 1.0);
            let a2 = -xi * xi / (2.0 * (2.0 * d + 3.0));
            assert!((c.alpha[1] - a2).abs() < 1e-15);
        }
        let c = SeriesCoefficients::new(xi, 0.0, 0.5, 2);
        assert!((c.alpha[1] + xi * xi / 6.0).abs() < 1e-15);
    }

    #[test]
    fn recursion_is_reproduced() {
        let c = SeriesCoefficients::new(1.3, -0.2, 0.4, 25);
        for i in 2..=25 {
            let conv: f64 = (1..i).map(|k| c.alpha[k - 1] * c.alpha[i - k - 1]).sum();
            let expect = -1.69 / (2.0 * (i as f64 * 1.8 - 1.0)) * conv;
            assert!((c.alpha[i - 1] - expect).abs() <= 1e-15 * expect.abs().max(1e-300));
        }
    }

    #[test]
    fn taylor_pattern_of_scaled_limit() {
        // u^2/2 + xi^2 u^4 / 24 + xi^4 u^6 / 240
        let xi: f64 = 0.9;
        let c = SeriesCoefficients::new(xi, 0.0, 0.0, 3);
        let signed: alloc::vec::Vec<f64> = c
            .alpha
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let i = k as i32 + 1;
                let sign = if i % 2 == 1 { 1.0 } else { -1.0 };
                sign * a / libm::pow(2.0, i as f64)
            })
            .collect();
        assert!((signed[0] - 0.5).abs() < 1e-12);
        assert!((signed[1] - xi * xi / 24.0).abs() < 1e-12);
        assert!((signed[2] - xi.powi(4) / 240.0).abs() < 1e-12);
    }

    #[test]
    fn requires_kappa_zero_and_radius() {
        let p = ModelParams::new(1.0, 0.04, 0.5, 0.04, 0.0, 0.0).unwrap();
        assert_eq!(
            series_b_kappa0(&p, 2.0, 1.0, 10),
            Err(Error::OutOfRange("kappa"))
        );
        let q = p.with(|r| r.kappa = 0.0).unwrap();
        assert_eq!(
            series_b_kappa0(&q, 5.0, 1.0, 10),
            Err(Error::OutOfRange("t"))
        );
        assert!(series_b_kappa0(&q, 1.2, 1.0, 10).is_ok());
    }

    #[test]
    fn vanishes_on_martingale_endpoints() {
        let p = ModelParams::new(0.0, 0.0, 0.5, 0.04, 0.0, 0.1).unwrap();
        assert_eq!(series_b_kappa0(&p, 0.0, 1.0, 30).unwrap(), 0.0);
        assert_eq!(series_b_kappa0(&p, 1.0, 1.0, 30).unwrap(), 0.0);
    }
}
