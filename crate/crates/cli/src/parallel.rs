//! Parallel Monte Carlo with a schedule-independent reduction.
//!
//! Samples are produced in parallel but collected by path index and reduced
//! sequentially, so the estimate is bit-identical for any number of workers.

use fheston_core::simulation::{
    ConditionalCall, McConfig, McEstimate, NaiveEulerCall, PathSampler,
};
use fheston_core::{ModelParams, Result};
use rayon::prelude::*;

pub fn run_parallel<S: PathSampler + Sync>(sampler: &S, n_paths: usize) -> Result<McEstimate> {
    let samples: Vec<f64> = (0..n_paths as u64)
        .into_par_iter()
        .map(|i| sampler.sample(i))
        .collect();
    McEstimate::from_samples(&samples, sampler.seed())
}

pub fn mc_call_price(p: &ModelParams, x: f64, t: f64, cfg: &McConfig) -> Result<McEstimate> {
    run_parallel(&ConditionalCall::new(p, x, t, cfg)?, cfg.n_paths)
}

pub fn mc_naive_call_price(p: &ModelParams, x: f64, t: f64, cfg: &McConfig) -> Result<McEstimate> {
    run_parallel(&NaiveEulerCall::new(p, x, t, cfg)?, cfg.n_paths)
}
