use super::OptionKind;
use crate::special::{std_normal_cdf, std_normal_pdf};

/// Undiscounted call on unit spot:
/// `N(-x/s + s/2) - e^x N(-x/s - s/2)` with `s = sigma sqrt(t)`.
pub fn bs_call_price(x: f64, t: f64, sigma: f64) -> f64 {
    let s = sigma * libm::sqrt(t);
    if s == 0.0 {
        return (1.0 - libm::exp(x)).max(0.0);
    }
    if s.is_infinite() {
        return 1.0;
    }
    let d1 = -x / s + 0.5 * s;
    std_normal_cdf(d1) - libm::exp(x) * std_normal_cdf(d1 - s)
}

/// Put on unit spot, equal to `call - 1 + e^x` by parity. Evaluated
/// directly so that out-of-the-money puts keep their relative accuracy.
pub fn bs_put_price(x: f64, t: f64, sigma: f64) -> f64 {
    let s = sigma * libm::sqrt(t);
    let k = libm::exp(x);
    if s == 0.0 {
        return (k - 1.0).max(0.0);
    }
    if s.is_infinite() {
        return k;
    }
    let d1 = -x / s + 0.5 * s;
    k * std_normal_cdf(s - d1) - std_normal_cdf(-d1)
}

pub fn bs_price(kind: OptionKind, x: f64, t: f64, sigma: f64) -> f64 {
    match kind {
        OptionKind::Call => bs_call_price(x, t, sigma),
        OptionKind::Put => bs_put_price(x, t, sigma),
    }
}

/// Sensitivity to the total standard deviation `s = sigma sqrt(t)`; the
/// same for calls and puts.
pub fn bs_vega(x: f64, s: f64) -> f64 {
    if s <= 0.0 {
        return 0.0;
    }
    std_normal_pdf(-x / s + 0.5 * s)
}
