//! Closed-form companions of the Riccati solver: the `d = 0, kappa = 0`
//! Heston formula, the small-time expansion and the comparison bounds.

use crate::model::ModelParams;
use crate::special::gamma_pos;
use crate::{Error, Result};

use core::f64::consts::FRAC_PI_2;

/// `m(u, t)` for `kappa = d = eta = 0`:
/// `(v0/xi) sqrt(u(u-1)) tan(xi t sqrt(u(u-1)) / 2)`, continued by `tanh`
/// for `u in (0, 1)`.
pub fn heston_tan_mgf(v0: f64, xi: f64, u: f64, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::OutOfRange("t"));
    }
    if xi < 0.0 {
        return Err(Error::OutOfRange("xi"));
    }
    let a = u * (u - 1.0);
    if a == 0.0 {
        return Ok(0.0);
    }
    if xi == 0.0 {
        return Ok(0.5 * v0 * a * t);
    }
    if a > 0.0 {
        let r = libm::sqrt(a);
        let arg = 0.5 * xi * t * r;
        if (arg - FRAC_PI_2).abs() < 1e-6 {
            return Err(Error::PoleProximity);
        }
        if arg > FRAC_PI_2 {
            // explosion happened before t
            return Err(Error::OutsideDomain);
        }
        Ok(v0 / xi * r * libm::tan(arg))
    } else {
        let r = libm::sqrt(-a);
        Ok(-v0 / xi * r * libm::tanh(0.5 * xi * t * r))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpansionOrder {
    First,
    Second,
}

/// Leading terms of `m(u, t)` as `t -> 0`.
///
/// First order: `u(u-1) eta t / 2 + v0 u(u-1) t^(d+1) / (2 Gamma(d+2))`.
/// Second order adds `kappa (theta - v0) u(u-1) t^(d+2) / (2 Gamma(d+3))`,
/// obtained from `B = zeta s^(d+1) - kappa zeta s^(d+2)/(d+2) + ...`.
pub fn small_time_expansion(p: &ModelParams, u: f64, t: f64, order: ExpansionOrder) -> f64 {
    let d = p.d();
    let uu = u * (u - 1.0);
    let mut m =
        0.5 * uu * p.eta() * t + p.v0() * uu * libm::pow(t, d + 1.0) / (2.0 * gamma_pos(d + 2.0));
    if order == ExpansionOrder::Second {
        m += p.kappa() * (p.theta() - p.v0()) * uu * libm::pow(t, d + 2.0)
            / (2.0 * gamma_pos(d + 3.0));
    }
    m
}

/// `psi_-(t) <= B(t) <= psi_+(t)` for `u in [0, 1]`, where
/// `psi_(+/-)(t) = -kappa/xi^2 +/- (1/xi) sqrt(kappa^2/xi^2 + u(1-u) t^d / Gamma(d+1))`
/// are the roots of the right-hand side of the Riccati equation in `B`.
pub fn bounds_psi(p: &ModelParams, u: f64, t: f64) -> Result<(f64, f64)> {
    let xi = p.xi();
    if xi == 0.0 {
        return Err(Error::OutOfRange("xi"));
    }
    if !(0.0..=1.0).contains(&u) {
        return Err(Error::OutOfRange("u"));
    }
    if !(t >= 0.0) {
        return Err(Error::OutOfRange("t"));
    }
    let k = p.kappa() / (xi * xi);
    let forcing = if u == 0.0 || u == 1.0 {
        0.0
    } else {
        u * (1.0 - u) * libm::pow(t, p.d()) / gamma_pos(p.d() + 1.0)
    };
    let root = libm::sqrt(k * k * xi * xi + forcing) / xi;
    Ok((-k - root, -k + root))
}
