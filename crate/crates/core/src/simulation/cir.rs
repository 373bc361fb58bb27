use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Gamma, Poisson, StandardNormal};

use crate::model::{ModelParams, TimeGrid};

/// Discretisation of the CIR variance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// Euler with the drift and diffusion evaluated at `max(V, 0)`.
    FullTruncation,
    /// Noncentral chi-squared transition as a Poisson mixture of Gammas.
    ExactTransition,
}

/// The generator for path `index` under `seed`.
pub fn path_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Nonnegative variance values on a time grid, starting at `v0`.
#[derive(Debug, Clone, PartialEq)]
pub struct VariancePath {
    pub grid: TimeGrid,
    pub values: Vec<f64>,
}

/// One CIR path on `grid`.
pub fn simulate_cir_path<R: Rng + ?Sized>(
    p: &ModelParams,
    grid: &TimeGrid,
    scheme: Scheme,
    rng: &mut R,
) -> VariancePath {
    let mut values = Vec::with_capacity(grid.len());
    fill_cir_path(p, grid.nodes(), scheme, rng, &mut values);
    VariancePath {
        grid: grid.clone(),
        values,
    }
}

pub(crate) fn fill_cir_path<R: Rng + ?Sized>(
    p: &ModelParams,
    nodes: &[f64],
    scheme: Scheme,
    rng: &mut R,
    out: &mut Vec<f64>,
) {
    out.clear();
    let mut v = p.v0();
    out.push(v);
    for w in nodes.windows(2) {
        let dt = w[1] - w[0];
        match scheme {
            Scheme::FullTruncation => {
                let z: f64 = rng.sample(StandardNormal);
                let vp = v.max(0.0);
                v += p.kappa() * (p.theta() - vp) * dt + p.xi() * libm::sqrt(vp * dt) * z;
                out.push(v.max(0.0));
            }
            Scheme::ExactTransition => {
                v = exact_step(p, v, dt, rng);
                out.push(v);
            }
        }
    }
}

/// `V_{t+dt} = c * chi2'(delta, lambda)` with `c = xi^2 (1 - e^{-kappa dt}) / (4 kappa)`,
/// `delta = 4 kappa theta / xi^2`, `lambda = V e^{-kappa dt} / c`, sampled as
/// `c * Gamma((delta + 2N) / 2, 2)` with `N ~ Poisson(lambda / 2)`.
fn exact_step<R: Rng + ?Sized>(p: &ModelParams, v: f64, dt: f64, rng: &mut R) -> f64 {
    let (kappa, theta, xi) = (p.kappa(), p.theta(), p.xi());
    let decay = libm::exp(-kappa * dt);
    if xi == 0.0 {
        return theta + (v - theta) * decay;
    }
    let c = if kappa == 0.0 {
        0.25 * xi * xi * dt
    } else {
        xi * xi * -libm::expm1(-kappa * dt) / (4.0 * kappa)
    };
    let delta = 4.0 * kappa * theta / (xi * xi);
    let half_lambda = 0.5 * v * decay / c;
    let n = if half_lambda > 0.0 {
        // the rate is finite and positive here, so construction cannot fail
        rng.sample(Poisson::new(half_lambda).expect("positive Poisson rate"))
    } else {
        0.0
    };
    let shape = 0.5 * delta + n;
    if shape == 0.0 {
        return 0.0;
    }
    c * rng.sample(Gamma::new(shape, 2.0).expect("positive Gamma shape"))
}
