use super::black_scholes::{bs_price, bs_vega};
use super::{OptionKind, OptionQuote};
use crate::{Error, Result};

const NEAR_BOUND: f64 = 1e-12;
const MAX_TOTAL_STD: f64 = 40.0;
const MAX_ITER: usize = 200;

/// Black-Scholes volatility reproducing `quote.price`.
///
/// The quote is moved to the out-of-the-money side by parity and the
/// total standard deviation `s = sigma sqrt(t)` is found by Newton steps
/// on the log price, safeguarded by bisection on `[1e-9 sqrt(t), 40]`.
///
/// Errors: [`Error::NoSolution`] when the price violates the static
/// bounds, [`Error::NearBound`] when it lies within `1e-12` of one.
pub fn implied_vol(quote: &OptionQuote, kind: OptionKind) -> Result<f64> {
    let OptionQuote {
        log_strike: x,
        maturity: t,
        price,
    } = *quote;
    let (lower, upper) = kind.price_bounds(x);
    if price <= lower || price >= upper {
        return Err(Error::NoSolution);
    }
    if price - lower < NEAR_BOUND || upper - price < NEAR_BOUND {
        return Err(Error::NearBound);
    }

    let k = libm::exp(x);
    let (otm_kind, target) = match (kind, x >= 0.0) {
        (OptionKind::Call, true) | (OptionKind::Put, false) => (kind, price),
        (OptionKind::Call, false) => (OptionKind::Put, price - 1.0 + k),
        (OptionKind::Put, true) => (OptionKind::Call, price + 1.0 - k),
    };
    if !(target > 0.0) {
        return Err(Error::NearBound);
    }
    let value = |s: f64| bs_price(otm_kind, x, 1.0, s);

    let sqrt_t = libm::sqrt(t);
    let mut lo = 1e-9 * sqrt_t;
    let mut hi = MAX_TOTAL_STD;
    if value(hi) <= target {
        return Err(Error::NearBound);
    }
    let seed = if x == 0.0 {
        libm::sqrt(2.0 * core::f64::consts::PI) * target
    } else {
        libm::sqrt(2.0 * x.abs())
    };
    let mut s = seed.clamp(lo, hi);
    let ln_target = libm::log(target);

    for _ in 0..MAX_ITER {
        let v = value(s);
        if v > target {
            hi = s;
        } else {
            lo = s;
        }
        let vega = bs_vega(x, s);
        let mut next = if v > 0.0 && vega > 0.0 {
            s - (libm::log(v) - ln_target) * v / vega
        } else {
            f64::NAN
        };
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        let step = (next - s).abs();
        s = next;
        if step <= 4.0 * f64::EPSILON * s || hi - lo <= 4.0 * f64::EPSILON * hi {
            return Ok(s / sqrt_t);
        }
    }
    Ok(s / sqrt_t)
}
