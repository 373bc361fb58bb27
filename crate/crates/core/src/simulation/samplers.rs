use alloc::vec::Vec;

use rand::Rng;
use rand_distr::StandardNormal;

use super::cir::{fill_cir_path, path_rng, Scheme};
use super::estimate::{McConfig, McEstimate};
use super::kernel::KernelWeights;
use crate::model::{ModelParams, TimeGrid};
use crate::pricing::bs_call_price;
use crate::{Error, Result};

/// One independent sample per path index.
pub trait PathSampler {
    fn sample(&self, index: u64) -> f64;
    fn seed(&self) -> u64;
}

/// Draw paths `0..n` in order and reduce.
pub fn run_sequential<S: PathSampler>(sampler: &S, n_paths: usize) -> Result<McEstimate> {
    let samples: Vec<f64> = (0..n_paths as u64).map(|i| sampler.sample(i)).collect();
    McEstimate::from_samples(&samples, sampler.seed())
}

struct Setup {
    p: ModelParams,
    t: f64,
    grid: TimeGrid,
    scheme: Scheme,
    seed: u64,
}

impl Setup {
    fn new(p: &ModelParams, t: f64, cfg: &McConfig) -> Result<Self> {
        cfg.validate()?;
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::OutOfRange("t"));
        }
        let grid = TimeGrid::uniform(t, cfg.steps_for(t))?;
        Ok(Self {
            p: *p,
            t,
            grid,
            scheme: cfg.scheme,
            seed: cfg.seed,
        })
    }

    fn variance(&self, index: u64, buf: &mut Vec<f64>) {
        fill_cir_path(
            &self.p,
            self.grid.nodes(),
            self.scheme,
            &mut path_rng(self.seed, index),
            buf,
        );
    }
}

/// Conditional Black-Scholes payoff: `bs_call(x, 1, sqrt(IV))` where `IV` is
/// the integrated fractional variance of the simulated path.
pub struct ConditionalCall {
    setup: Setup,
    x: f64,
    weights: KernelWeights,
}

impl ConditionalCall {
    pub fn new(p: &ModelParams, x: f64, t: f64, cfg: &McConfig) -> Result<Self> {
        let setup = Setup::new(p, t, cfg)?;
        let weights = KernelWeights::new(&setup.grid, p.d() + 1.0)?;
        Ok(Self { setup, x, weights })
    }
}

impl PathSampler for ConditionalCall {
    fn sample(&self, index: u64) -> f64 {
        let mut v = Vec::with_capacity(self.setup.grid.len());
        self.setup.variance(index, &mut v);
        let iv = self.setup.p.eta() * self.setup.t + self.weights.apply(&v);
        bs_call_price(self.x, 1.0, libm::sqrt(iv))
    }

    fn seed(&self) -> u64 {
        self.setup.seed
    }
}

/// Plain Euler simulation of the log-price for `d = 0`, with payoff
/// `(e^X - e^x)^+`. Uses the stream `index | 2^63`, disjoint from the
/// conditional estimator's streams.
pub struct NaiveEulerCall {
    setup: Setup,
    x: f64,
}

impl NaiveEulerCall {
    pub fn new(p: &ModelParams, x: f64, t: f64, cfg: &McConfig) -> Result<Self> {
        if p.d() != 0.0 {
            return Err(Error::OutOfRange("d"));
        }
        Ok(Self {
            setup: Setup::new(p, t, cfg)?,
            x,
        })
    }
}

impl PathSampler for NaiveEulerCall {
    fn sample(&self, index: u64) -> f64 {
        let stream = index | (1 << 63);
        let mut rng = path_rng(self.setup.seed, stream);
        let mut v = Vec::with_capacity(self.setup.grid.len());
        fill_cir_path(
            &self.setup.p,
            self.setup.grid.nodes(),
            self.setup.scheme,
            &mut rng,
            &mut v,
        );
        let nodes = self.setup.grid.nodes();
        let mut x = 0.0;
        for (k, w) in nodes.windows(2).enumerate() {
            let var = (self.setup.p.eta() + v[k]) * (w[1] - w[0]);
            let z: f64 = rng.sample(StandardNormal);
            x += -0.5 * var + libm::sqrt(var) * z;
        }
        (libm::exp(x) - libm::exp(self.x)).max(0.0)
    }

    fn seed(&self) -> u64 {
        self.setup.seed
    }
}

/// What [`MeanVdSampler`] estimates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeanVdQuantity {
    /// `E[V^d_t]`, for `d >= 0`.
    Pointwise,
    /// `int_0^t (E[V^d_s] - eta) ds`, for `d < 0`, where pointwise values
    /// would need a fractional derivative of a rough path.
    Integrated,
}

pub struct MeanVdSampler {
    setup: Setup,
    weights: Option<KernelWeights>,
    quantity: MeanVdQuantity,
}

impl MeanVdSampler {
    pub fn new(p: &ModelParams, t: f64, cfg: &McConfig) -> Result<Self> {
        let setup = Setup::new(p, t, cfg)?;
        let d = p.d();
        let (weights, quantity) = if d > 0.0 {
            (
                Some(KernelWeights::new(&setup.grid, d)?),
                MeanVdQuantity::Pointwise,
            )
        } else if d == 0.0 {
            (None, MeanVdQuantity::Pointwise)
        } else {
            (
                Some(KernelWeights::new(&setup.grid, d + 1.0)?),
                MeanVdQuantity::Integrated,
            )
        };
        Ok(Self {
            setup,
            weights,
            quantity,
        })
    }

    pub fn quantity(&self) -> MeanVdQuantity {
        self.quantity
    }
}

impl PathSampler for MeanVdSampler {
    fn sample(&self, index: u64) -> f64 {
        let mut v = Vec::with_capacity(self.setup.grid.len());
        self.setup.variance(index, &mut v);
        match (&self.weights, self.quantity) {
            (None, _) => self.setup.p.eta() + v[v.len() - 1],
            (Some(w), MeanVdQuantity::Pointwise) => self.setup.p.eta() + w.apply(&v),
            (Some(w), MeanVdQuantity::Integrated) => w.apply(&v),
        }
    }

    fn seed(&self) -> u64 {
        self.setup.seed
    }
}

/// Mixing estimator of the call price on unit spot.
pub fn mc_call_price(p: &ModelParams, x: f64, t: f64, cfg: &McConfig) -> Result<McEstimate> {
    run_sequential(&ConditionalCall::new(p, x, t, cfg)?, cfg.n_paths)
}

/// Naive Euler estimator of the same price, `d = 0` only.
pub fn mc_naive_call_price(p: &ModelParams, x: f64, t: f64, cfg: &McConfig) -> Result<McEstimate> {
    run_sequential(&NaiveEulerCall::new(p, x, t, cfg)?, cfg.n_paths)
}

/// Monte Carlo counterpart of [`crate::cgf::mean_vd`] (`d >= 0`) or of
/// [`crate::cgf::integrated_mean_vd`] (`d < 0`).
pub fn mean_vd_mc(p: &ModelParams, t: f64, cfg: &McConfig) -> Result<(McEstimate, MeanVdQuantity)> {
    let s = MeanVdSampler::new(p, t, cfg)?;
    Ok((run_sequential(&s, cfg.n_paths)?, s.quantity()))
}

/// Stationary autocovariance of the CIR variance, `xi^2 theta e^{-kappa h} / (2 kappa)`.
pub fn cov_v_stationary(p: &ModelParams, h: f64) -> Result<f64> {
    if p.kappa() == 0.0 {
        return Err(Error::OutOfRange("kappa"));
    }
    if !(h >= 0.0) {
        return Err(Error::OutOfRange("h"));
    }
    Ok(p.xi() * p.xi() * p.theta() * libm::exp(-p.kappa() * h) / (2.0 * p.kappa()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cgf::{integrated_mean_vd, mean_vd};
    use crate::special::gamma_pos;

    fn cfg(n: usize, steps: usize) -> McConfig {
        McConfig {
            n_paths: n,
            steps_per_unit_time: steps,
            seed: 2024,
            scheme: Scheme::FullTruncation,
        }
    }

    #[test]
    fn degenerate_variance_gives_black_scholes_with_zero_error() {
        for d in [-0.3, 0.0, 0.3] {
            let p = ModelParams::new(0.0, 0.0, 0.0, 0.04, 0.01, d).unwrap();
            let t = 1.5;
            let e = mc_call_price(&p, 0.1, t, &cfg(50, 40)).unwrap();
            let iv = 0.01 * t + 0.04 * libm::pow(t, d + 1.0) / libm::tgamma(d + 2.0);
            assert_eq!(e.std_error, 0.0);
            assert!((e.mean / bs_call_price(0.1, 1.0, libm::sqrt(iv)) - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn reproducible() {
        let p = ModelParams::new(1.0, 0.04, 0.4, 0.04, 0.01, 0.2).unwrap();
        let a = mc_call_price(&p, 0.0, 1.0, &cfg(200, 50)).unwrap();
        let b = mc_call_price(&p, 0.0, 1.0, &cfg(200, 50)).unwrap();
        assert_eq!(a, b);
        let c = mc_call_price(
            &p,
            0.0,
            1.0,
            &McConfig {
                seed: 1,
                ..cfg(200, 50)
            },
        )
        .unwrap();
        assert_ne!(a.mean, c.mean);
    }

    #[test]
    fn mean_of_fractional_variance() {
        let p = ModelParams::new(1.0, 0.06, 0.3, 0.03, 0.01, 0.3).unwrap();
        let (e, q) = mean_vd_mc(&p, 1.0, &cfg(4000, 400)).unwrap();
        assert_eq!(q, MeanVdQuantity::Pointwise);
        let exact = mean_vd(&p, 1.0).unwrap();
        assert!(
            (e.mean - exact).abs() <= 3.0 * e.std_error + 2e-4,
            "{} vs {exact}",
            e.mean
        );

        let n = p.with(|r| r.d = -0.3).unwrap();
        let (e, q) = mean_vd_mc(&n, 1.0, &cfg(4000, 400)).unwrap();
        assert_eq!(q, MeanVdQuantity::Integrated);
        let exact = integrated_mean_vd(&n, 1.0).unwrap();
        assert!(
            (e.mean - exact).abs() <= 3.0 * e.std_error + 2e-4,
            "{} vs {exact}",
            e.mean
        );
    }

    #[test]
    fn naive_requires_d_zero() {
        let p = ModelParams::new(1.0, 0.04, 0.4, 0.04, 0.01, 0.2).unwrap();
        assert!(mc_naive_call_price(&p, 0.0, 1.0, &cfg(10, 10)).is_err());
    }

    #[test]
    fn stationary_covariance() {
        let p = ModelParams::new(2.0, 0.04, 0.3, 0.04, 0.0, 0.2).unwrap();
        assert!((cov_v_stationary(&p, 0.0).unwrap() - 0.09 * 0.04 / 4.0).abs() < 1e-18);
        assert!(cov_v_stationary(&p, 1.0).unwrap() < cov_v_stationary(&p, 0.5).unwrap());
        let q = p.with(|r| r.kappa = 0.0).unwrap();
        assert_eq!(cov_v_stationary(&q, 0.0), Err(Error::OutOfRange("kappa")));
    }

    #[test]
    fn gamma_weights_used() {
        // d = 0.3 pointwise weights sum to t^d / Gamma(1+d)
        let grid = TimeGrid::uniform(2.0, 16).unwrap();
        let w = KernelWeights::new(&grid, 0.3).unwrap();
        let ones = [1.0; 17];
        assert!((w.apply(&ones) - libm::pow(2.0, 0.3) / gamma_pos(1.3)).abs() < 1e-15);
    }
}
