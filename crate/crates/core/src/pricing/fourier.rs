use num_complex::Complex64 as C64;

use super::OptionKind;
use crate::cgf::characteristic_fn;
use crate::model::ModelParams;
use crate::quadrature::integrate;
use crate::{Error, Result};

/// Settings for the damped inverse transform.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourierConfig {
    /// Real part `c` of the integration line, in `(0, 1)`.
    pub damping: f64,
    /// Absolute error target per panel, and the tail cut-off.
    pub quad_tol: f64,
    /// Local tolerance of each Riccati solve.
    pub ode_tol: f64,
}

impl Default for FourierConfig {
    fn default() -> Self {
        Self {
            damping: 0.5,
            quad_tol: 1e-10,
            ode_tol: 1e-10,
        }
    }
}

const MAX_DOUBLINGS: usize = 60;
const PANELS_PER_SEGMENT: usize = 64;

/// `E[min(e^X_t, e^x)] = e^{x(1-c)}/pi int_0^inf Re[M(c + i nu) e^{-i nu x} / ((c + i nu)(1 - c - i nu))] d nu`,
/// with `M(z) = E e^{z X_t}`.
///
/// The half line is cut into `[0, 1], [1, 2], [2, 4], ...`; each segment is
/// integrated adaptively and the sweep stops at the first segment whose
/// absolute integral drops below `quad_tol`.
fn min_payoff_value(p: &ModelParams, x: f64, t: f64, cfg: &FourierConfig) -> Result<f64> {
    let c = cfg.damping;
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::OutOfRange("damping"));
    }
    if !(cfg.quad_tol > 0.0) {
        return Err(Error::OutOfRange("quad_tol"));
    }
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::OutOfRange("t"));
    }
    if !x.is_finite() {
        return Err(Error::NonFinite("x"));
    }
    let mut integrand = |nu: f64| -> Result<f64> {
        let z = C64::new(c, nu);
        let phi = characteristic_fn(p, z, t, cfg.ode_tol)?;
        let kernel = C64::new(0.0, -nu * x).exp() / (z * (1.0 - z));
        Ok((phi * kernel).re)
    };
    let mut total = 0.0;
    let (mut a, mut b) = (0.0, 1.0);
    for _ in 0..MAX_DOUBLINGS {
        let seg = integrate(&mut integrand, a, b, cfg.quad_tol, PANELS_PER_SEGMENT)?;
        total += seg.value;
        if seg.abs < cfg.quad_tol {
            return Ok(libm::exp(x * (1.0 - c)) / core::f64::consts::PI * total);
        }
        a = b;
        b *= 2.0;
    }
    Err(Error::QuadratureFailure("fourier tail"))
}

/// Fourier price of a call or put on unit spot.
///
/// Quadrature noise that pushes the price marginally outside its static
/// bounds is clipped; larger violations are reported as failures.
pub fn fourier_price(
    p: &ModelParams,
    x: f64,
    t: f64,
    kind: OptionKind,
    cfg: &FourierConfig,
) -> Result<f64> {
    let i = min_payoff_value(p, x, t, cfg)?;
    let price = match kind {
        OptionKind::Call => 1.0 - i,
        OptionKind::Put => libm::exp(x) - i,
    };
    let (lower, upper) = kind.price_bounds(x);
    let slack = 1e3 * cfg.quad_tol.max(f64::EPSILON);
    if price < lower - slack || price > upper + slack || !price.is_finite() {
        return Err(Error::QuadratureFailure("price outside static bounds"));
    }
    Ok(price.clamp(lower, upper))
}

pub fn fourier_call_price(p: &ModelParams, x: f64, t: f64, cfg: &FourierConfig) -> Result<f64> {
    fourier_price(p, x, t, OptionKind::Call, cfg)
}

pub fn fourier_put_price(p: &ModelParams, x: f64, t: f64, cfg: &FourierConfig) -> Result<f64> {
    fourier_price(p, x, t, OptionKind::Put, cfg)
}

/// `1 - call`: the value of holding the asset and writing the call.
pub fn covered_call_value(call_price: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&call_price) {
        return Err(Error::OutOfRange("call_price"));
    }
    Ok(1.0 - call_price)
}
