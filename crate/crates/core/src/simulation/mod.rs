//! Monte Carlo for the uncorrelated model.
//!
//! Given a variance path the log-price is Gaussian with variance equal to
//! the integrated fractional variance, so option prices are averages of
//! Black-Scholes values over simulated paths. Every path draws from its
//! own ChaCha stream keyed by `(seed, path index)`, and estimates reduce
//! samples in index order, so results do not depend on how paths are
//! scheduled.

mod cir;
mod estimate;
mod kernel;
mod samplers;

pub use cir::{path_rng, simulate_cir_path, Scheme, VariancePath};
pub use estimate::{McConfig, McEstimate};
pub use kernel::{integrated_frac_variance, KernelWeights};
pub use samplers::{
    cov_v_stationary, mc_call_price, mc_naive_call_price, mean_vd_mc, run_sequential,
    ConditionalCall, MeanVdQuantity, MeanVdSampler, NaiveEulerCall, PathSampler,
};
