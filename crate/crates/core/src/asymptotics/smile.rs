use alloc::vec::Vec;

use super::rates::{rate_minus_star, rate_plus_star};
use crate::cgf::MomentDomain;
use crate::model::ModelParams;
use crate::pricing::{SmilePoint, SmileSource};
use crate::special::gamma_pos;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    SmallTime,
    LargeTime,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DSign {
    Positive,
    Negative,
}

impl DSign {
    fn of(p: &ModelParams) -> Result<Self> {
        match p.d() {
            d if d > 0.0 => Ok(DSign::Positive),
            d if d < 0.0 => Ok(DSign::Negative),
            _ => Err(Error::OutOfRange("d")),
        }
    }
}

/// Small-maturity implied volatility at log-strike `x != 0`.
///
/// For `d > 0` the implied variance tends to `eta`, independent of the
/// strike. For `d < 0` it explodes like `v0 t^d / Gamma(d+2)`.
pub fn smile_small_time(p: &ModelParams, x: f64, t: f64) -> Result<SmilePoint> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::OutOfRange("t"));
    }
    if x == 0.0 || !x.is_finite() {
        return Err(Error::OutOfRange("x"));
    }
    let variance = match DSign::of(p)? {
        DSign::Positive => {
            if p.eta() == 0.0 {
                return Err(Error::OutOfRange("eta"));
            }
            p.eta()
        }
        DSign::Negative => p.v0() * libm::pow(t, p.d()) / gamma_pos(p.d() + 2.0),
    };
    SmilePoint::new(x, t, libm::sqrt(variance), SmileSource::Asymptotic)
}

/// Large-maturity implied volatility.
///
/// `d > 0`: the strike is `e^{x t^{1+d/2}}` and the volatility is
/// `sqrt(2) t^{d/4} (sqrt(L(x)) + sqrt(L(x) - x))` with `L = Lambda_plus*`.
/// `d < 0`: the strike is `e^{x t}` and the implied variance is `eta`, for
/// `x` strictly inside `((u_- - 1/2) eta, (u_+ - 1/2) eta)`.
///
/// The returned point carries the actual log-strike, not the scaled `x`.
pub fn smile_large_time(
    p: &ModelParams,
    x: f64,
    t: f64,
    domain: Option<MomentDomain>,
) -> Result<SmilePoint> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::OutOfRange("t"));
    }
    if !x.is_finite() {
        return Err(Error::NonFinite("x"));
    }
    p.require_open_d()?;
    match DSign::of(p)? {
        DSign::Positive => {
            let rate = rate_plus_star(x, p)?;
            // rate >= max(x, 0); clamp rounding residue only
            let gap = (rate - x).max(0.0);
            let vol = core::f64::consts::SQRT_2
                * libm::pow(t, 0.25 * p.d())
                * (libm::sqrt(rate) + libm::sqrt(gap));
            SmilePoint::new(
                x * libm::pow(t, 1.0 + 0.5 * p.d()),
                t,
                vol,
                SmileSource::Asymptotic,
            )
        }
        DSign::Negative => {
            let dom = domain.ok_or(Error::OutOfRange("domain"))?;
            let eta = p.eta();
            if eta == 0.0 {
                return Err(Error::OutOfRange("eta"));
            }
            let lo = (dom.u_minus - 0.5) * eta;
            let hi = (dom.u_plus - 0.5) * eta;
            if !(x > lo && x < hi) {
                return Err(Error::OutOfRange("x"));
            }
            SmilePoint::new(x * t, t, libm::sqrt(eta), SmileSource::Asymptotic)
        }
    }
}

/// Asymptotic smile over a strike ladder.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticSmile {
    pub regime: Regime,
    pub d_sign: DSign,
    pub entries: Vec<SmilePoint>,
}

impl AsymptoticSmile {
    pub fn small_time(p: &ModelParams, xs: &[f64], t: f64) -> Result<Self> {
        let entries = xs
            .iter()
            .map(|&x| smile_small_time(p, x, t))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            regime: Regime::SmallTime,
            d_sign: DSign::of(p)?,
            entries,
        })
    }

    /// `xs` are the scaled coordinates of [`smile_large_time`].
    pub fn large_time(
        p: &ModelParams,
        xs: &[f64],
        t: f64,
        domain: Option<MomentDomain>,
    ) -> Result<Self> {
        let entries = xs
            .iter()
            .map(|&x| smile_large_time(p, x, t, domain))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            regime: Regime::LargeTime,
            d_sign: DSign::of(p)?,
            entries,
        })
    }
}

/// Large-time rate function together with the minimisers of `L` and of
/// `L(x) - x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LargeTimeRate {
    /// `d > 0`: `Lambda_plus*`, with `x* = -inf` and `x~* = +inf` since the
    /// slope of `Lambda_plus` is unbounded at both ends of `[0, 1]`.
    Plus(ModelParams),
    /// `d < 0`: `Lambda_minus*`, with `x* = -eta/2` and `x~* = eta/2`.
    Minus { eta: f64, domain: MomentDomain },
}

impl LargeTimeRate {
    pub fn plus(p: &ModelParams) -> Result<Self> {
        rate_plus_star(0.0, p)?;
        Ok(LargeTimeRate::Plus(*p))
    }

    pub fn minus(eta: f64, domain: MomentDomain) -> Result<Self> {
        rate_minus_star(0.0, eta, domain.u_minus, domain.u_plus)?;
        Ok(LargeTimeRate::Minus { eta, domain })
    }

    pub fn rate(&self, x: f64) -> Result<f64> {
        match self {
            LargeTimeRate::Plus(p) => rate_plus_star(x, p),
            LargeTimeRate::Minus { eta, domain } => {
                Ok(rate_minus_star(x, *eta, domain.u_minus, domain.u_plus)?.value)
            }
        }
    }

    /// `L(x) - x`, the rate under the share measure.
    pub fn dual_rate(&self, x: f64) -> Result<f64> {
        Ok(self.rate(x)? - x)
    }

    pub fn x_star(&self) -> f64 {
        match self {
            LargeTimeRate::Plus(_) => f64::NEG_INFINITY,
            LargeTimeRate::Minus { eta, .. } => -0.5 * eta,
        }
    }

    pub fn x_tilde_star(&self) -> f64 {
        match self {
            LargeTimeRate::Plus(_) => f64::INFINITY,
            LargeTimeRate::Minus { eta, .. } => 0.5 * eta,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OptionPosition {
    Put,
    Call,
    CoveredCall,
}

/// Limit of `f(t)^{-1} log price` at strike `e^{x f(t)}`, given the rate
/// value `L(x)` and the minimisers `x* <= x~*` (infinite values allowed).
///
/// - put: `x - L(x)` for `x <= x*`, else `x`;
/// - call: `-(L(x) - x)` for `x >= x~*`, else `0`;
/// - covered call: `x` below `x*`, `x - L(x)` on `[x*, x~*]`, `0` above `x~*`.
pub fn option_asymptote(
    kind: OptionPosition,
    x: f64,
    rate: f64,
    x_star: f64,
    x_tilde_star: f64,
) -> f64 {
    match kind {
        OptionPosition::Put => {
            if x <= x_star {
                x - rate
            } else {
                x
            }
        }
        OptionPosition::Call => {
            if x >= x_tilde_star {
                -(rate - x)
            } else {
                0.0
            }
        }
        OptionPosition::CoveredCall => {
            if x > x_tilde_star {
                0.0
            } else if x < x_star {
                x
            } else {
                x - rate
            }
        }
    }
}

pub fn option_asymptote_large_time(
    rate: &LargeTimeRate,
    x: f64,
    kind: OptionPosition,
) -> Result<f64> {
    Ok(option_asymptote(
        kind,
        x,
        rate.rate(x)?,
        rate.x_star(),
        rate.x_tilde_star(),
    ))
}
