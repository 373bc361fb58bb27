//! Black-Scholes formulas, implied volatility and Fourier pricing.
//!
//! Spot is normalised to 1 and rates are zero throughout, so a log-strike
//! `x` means strike `e^x`.

mod black_scholes;
mod fourier;
mod implied;

pub use black_scholes::{bs_call_price, bs_price, bs_put_price, bs_vega};
pub use fourier::{
    covered_call_value, fourier_call_price, fourier_price, fourier_put_price, FourierConfig,
};
pub use implied::implied_vol;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OptionKind {
    Call,
    Put,
}

impl OptionKind {
    /// Static no-arbitrage bounds `(lower, upper)` for this kind at log-strike `x`.
    pub fn price_bounds(self, x: f64) -> (f64, f64) {
        let k = libm::exp(x);
        match self {
            OptionKind::Call => ((1.0 - k).max(0.0), 1.0),
            OptionKind::Put => ((k - 1.0).max(0.0), k),
        }
    }
}

/// An observed (or model) option price.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptionQuote {
    pub log_strike: f64,
    pub maturity: f64,
    pub price: f64,
}

impl OptionQuote {
    pub fn new(log_strike: f64, maturity: f64, price: f64) -> Result<Self> {
        if !log_strike.is_finite() {
            return Err(Error::NonFinite("log_strike"));
        }
        if !(maturity > 0.0) || !maturity.is_finite() {
            return Err(Error::OutOfRange("maturity"));
        }
        if !price.is_finite() {
            return Err(Error::NonFinite("price"));
        }
        Ok(Self {
            log_strike,
            maturity,
            price,
        })
    }
}

/// Where a smile point came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SmileSource {
    Fourier,
    Mc,
    Asymptotic,
}

impl SmileSource {
    pub fn as_str(self) -> &'static str {
        match self {
            SmileSource::Fourier => "fourier",
            SmileSource::Mc => "mc",
            SmileSource::Asymptotic => "asymptotic",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmilePoint {
    pub log_strike: f64,
    pub maturity: f64,
    pub implied_vol: f64,
    pub source: SmileSource,
}

impl SmilePoint {
    /// Rejects non-positive or non-finite volatilities.
    pub fn new(
        log_strike: f64,
        maturity: f64,
        implied_vol: f64,
        source: SmileSource,
    ) -> Result<Self> {
        if !(implied_vol > 0.0) || !implied_vol.is_finite() {
            return Err(Error::OutOfRange("implied_vol"));
        }
        Ok(Self {
            log_strike,
            maturity,
            implied_vol,
            source,
        })
    }

    pub fn implied_variance(&self) -> f64 {
        self.implied_vol * self.implied_vol
    }
}

/// Fourier price turned into a smile point.
pub fn fourier_smile_point(
    p: &crate::ModelParams,
    x: f64,
    t: f64,
    cfg: &FourierConfig,
) -> Result<SmilePoint> {
    let kind = if x >= 0.0 {
        OptionKind::Call
    } else {
        OptionKind::Put
    };
    let price = fourier_price(p, x, t, kind, cfg)?;
    let vol = implied_vol(&OptionQuote::new(x, t, price)?, kind)?;
    SmilePoint::new(x, t, vol, SmileSource::Fourier)
}
