//! Model parameters and time grids.

use alloc::vec::Vec;

use crate::{Error, Result};

/// Unvalidated parameter record, as read from flags or a JSON object.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RawParams {
    pub kappa: f64,
    pub theta: f64,
    pub xi: f64,
    pub v0: f64,
    pub eta: f64,
    pub d: f64,
}

impl RawParams {
    pub fn validate(self) -> Result<ModelParams> {
        let checks = [
            ("kappa", self.kappa),
            ("theta", self.theta),
            ("xi", self.xi),
            ("v0", self.v0),
            ("eta", self.eta),
            ("d", self.d),
        ];
        for (name, value) in checks {
            if !value.is_finite() {
                return Err(Error::NonFinite(name));
            }
        }
        for (name, value) in [
            ("kappa", self.kappa),
            ("theta", self.theta),
            ("xi", self.xi),
            ("eta", self.eta),
        ] {
            if value < 0.0 {
                return Err(Error::OutOfRange(name));
            }
        }
        if self.v0 <= 0.0 {
            return Err(Error::OutOfRange("v0"));
        }
        if !(-0.5..=0.5).contains(&self.d) {
            return Err(Error::OutOfRange("d"));
        }
        Ok(ModelParams { raw: self })
    }
}

/// Validated fractional Heston parameters.
///
/// `kappa` mean reversion, `theta` long-run variance, `xi` vol-of-vol,
/// `v0` initial variance, `eta` variance floor shift and `d` the
/// Riemann-Liouville order. `xi = 0` (deterministic variance) and
/// `kappa = 0` are accepted as degenerate modes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    raw: RawParams,
}

impl ModelParams {
    pub fn new(kappa: f64, theta: f64, xi: f64, v0: f64, eta: f64, d: f64) -> Result<Self> {
        RawParams {
            kappa,
            theta,
            xi,
            v0,
            eta,
            d,
        }
        .validate()
    }

    pub fn kappa(&self) -> f64 {
        self.raw.kappa
    }
    pub fn theta(&self) -> f64 {
        self.raw.theta
    }
    pub fn xi(&self) -> f64 {
        self.raw.xi
    }
    pub fn v0(&self) -> f64 {
        self.raw.v0
    }
    pub fn eta(&self) -> f64 {
        self.raw.eta
    }
    pub fn d(&self) -> f64 {
        self.raw.d
    }

    pub fn raw(&self) -> RawParams {
        self.raw
    }

    /// Copy with a modified field, revalidated.
    pub fn with(&self, edit: impl FnOnce(&mut RawParams)) -> Result<Self> {
        let mut raw = self.raw;
        edit(&mut raw);
        raw.validate()
    }

    /// Feller condition `2 kappa theta >= xi^2`.
    pub fn feller(&self) -> bool {
        2.0 * self.raw.kappa * self.raw.theta >= self.raw.xi * self.raw.xi
    }

    /// Variance is deterministic (`xi = 0`).
    pub fn is_deterministic_variance(&self) -> bool {
        self.raw.xi == 0.0
    }

    pub fn is_driftless(&self) -> bool {
        self.raw.kappa == 0.0
    }

    /// Large-maturity results hold on the open interval only.
    pub(crate) fn require_open_d(&self) -> Result<()> {
        if self.raw.d.abs() >= 0.5 {
            Err(Error::OutOfRange("d"))
        } else {
            Ok(())
        }
    }
}

/// Strictly increasing time nodes starting at zero.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeGrid {
    nodes: Vec<f64>,
}

impl TimeGrid {
    pub fn new(nodes: Vec<f64>) -> Result<Self> {
        if nodes.first() != Some(&0.0) {
            return Err(Error::OutOfRange("grid start"));
        }
        if nodes.iter().any(|t| !t.is_finite()) {
            return Err(Error::NonFinite("grid"));
        }
        if nodes.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::OutOfRange("grid order"));
        }
        Ok(Self { nodes })
    }

    /// `steps` equal intervals on `[0, t]`.
    pub fn uniform(t: f64, steps: usize) -> Result<Self> {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::OutOfRange("t"));
        }
        if steps == 0 {
            return Err(Error::OutOfRange("steps"));
        }
        let dt = t / steps as f64;
        let mut nodes: Vec<f64> = (0..=steps).map(|k| k as f64 * dt).collect();
        nodes[steps] = t;
        Ok(Self { nodes })
    }

    pub(crate) fn from_sorted_unchecked(nodes: Vec<f64>) -> Self {
        debug_assert!(nodes.windows(2).all(|w| w[1] > w[0]));
        Self { nodes }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn last(&self) -> f64 {
        *self.nodes.last().expect("grid has at least the origin")
    }
}
