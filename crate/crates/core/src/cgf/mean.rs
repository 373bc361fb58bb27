//! Mean of the fractional variance.
//!
//! With `mu(s) = E[V_s] = theta + (v0 - theta) e^{-kappa s}`, integration by
//! parts gives, for any order `alpha > -1`,
//! `I^alpha mu(t) = [v0 t^alpha + int_0^t (t-s)^alpha mu'(s) ds] / Gamma(alpha+1)`,
//! whose kernel `(t-s)^alpha` is integrable even when `alpha < 0`.

use crate::model::ModelParams;
use crate::special::{gamma_pos, ln_gamma};
use crate::{Error, Result};

/// `int_0^t (t-s)^alpha e^{-kappa s} ds`
/// `= t^(alpha+1) e^{-kappa t} sum_n (kappa t)^n / (n! (n + alpha + 1))`.
fn damped_power_integral(alpha: f64, kappa: f64, t: f64) -> f64 {
    let scale = libm::pow(t, alpha + 1.0);
    let z = kappa * t;
    if z == 0.0 {
        return scale / (alpha + 1.0);
    }
    let ln_z = libm::log(z);
    let mut sum = 0.0;
    let mut n = 0usize;
    loop {
        let nf = n as f64;
        let term = libm::exp(nf * ln_z - z - ln_gamma(nf + 1.0)) / (nf + alpha + 1.0);
        sum += term;
        if nf > z && term <= 1e-17 * sum {
            break;
        }
        n += 1;
    }
    scale * sum
}

fn fractional_integral_of_mean(p: &ModelParams, alpha: f64, t: f64) -> f64 {
    let kappa = p.kappa();
    let drift = if kappa == 0.0 || p.v0() == p.theta() {
        0.0
    } else {
        -kappa * (p.v0() - p.theta()) * damped_power_integral(alpha, kappa, t)
    };
    (p.v0() * libm::pow(t, alpha) + drift) / gamma_pos(alpha + 1.0)
}

/// `E[V^d_t] = eta + I^d E[V](t)`.
pub fn mean_vd(p: &ModelParams, t: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::OutOfRange("t"));
    }
    if t == 0.0 {
        // I^d of a bounded function vanishes at 0 for d > 0; diverges for d < 0.
        return Ok(match p.d() {
            d if d > 0.0 => p.eta(),
            0.0 => p.eta() + p.v0(),
            _ => f64::INFINITY,
        });
    }
    Ok(p.eta() + fractional_integral_of_mean(p, p.d(), t))
}

/// `int_0^t (E[V^d_s] - eta) ds = I^(1+d) E[V](t)`.
pub fn integrated_mean_vd(p: &ModelParams, t: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::OutOfRange("t"));
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    Ok(fractional_integral_of_mean(p, 1.0 + p.d(), t))
}
