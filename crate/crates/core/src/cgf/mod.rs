//! Cumulant generating function of `(X_t, V^d_t)`.
//!
//! `m(u, w, t) = w eta + u(u-1) eta t / 2 - v0 B(t) + A(t)` where `(A, B)`
//! solve the Riccati system in [`riccati`]. The same real-coefficient
//! system serves complex arguments.

mod closed_form;
mod domain;
mod mean;
mod riccati;
mod series;

pub use closed_form::{bounds_psi, heston_tan_mgf, small_time_expansion, ExpansionOrder};
pub use domain::{moment_domain_estimate, MomentDomain, DEFAULT_HORIZON};
pub use mean::{integrated_mean_vd, mean_vd};
pub use riccati::{riccati_solve, Divergence, RiccatiSolution, BLOW_UP_THRESHOLD};
pub use series::{series_b_kappa0, SeriesCoefficients};

use num_complex::Complex64 as C64;

use crate::model::ModelParams;
use crate::{Error, Result};

/// Default accepted-step budget for a single Riccati solve.
pub const DEFAULT_MAX_NODES: usize = 200_000;

/// Transform arguments and maturity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CgfQuery {
    pub u: C64,
    pub w: C64,
    pub t: f64,
}

impl CgfQuery {
    pub fn new(u: C64, w: C64, t: f64) -> Self {
        Self { u, w, t }
    }

    /// Real `u`, `w = 0`.
    pub fn real(u: f64, t: f64) -> Self {
        Self::new(C64::new(u, 0.0), C64::new(0.0, 0.0), t)
    }

    pub(crate) fn check(&self) -> Result<()> {
        if !(self.t > 0.0) || !self.t.is_finite() {
            return Err(Error::OutOfRange("t"));
        }
        let finite = |z: C64| z.re.is_finite() && z.im.is_finite();
        if !finite(self.u) {
            return Err(Error::NonFinite("u"));
        }
        if !finite(self.w) {
            return Err(Error::NonFinite("w"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CgfStatus {
    Converged,
    BlewUp,
    OutsideDomain,
}

/// `m(u, w, t)`; the value is finite iff the status is `Converged`, and
/// `+inf` otherwise (moment explosion).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CgfResult {
    pub value: C64,
    pub status: CgfStatus,
}

impl CgfResult {
    pub fn is_converged(&self) -> bool {
        self.status == CgfStatus::Converged
    }
}

pub fn cgf(p: &ModelParams, q: &CgfQuery, tol: f64) -> Result<CgfResult> {
    let sol = riccati_solve(p, q, tol, DEFAULT_MAX_NODES)?;
    Ok(assemble(p, q, &sol))
}

pub(crate) fn assemble(p: &ModelParams, q: &CgfQuery, sol: &RiccatiSolution) -> CgfResult {
    if let Some(kind) = sol.divergence {
        let status = match kind {
            Divergence::Threshold => CgfStatus::BlewUp,
            Divergence::StepCollapse => CgfStatus::OutsideDomain,
        };
        return CgfResult {
            value: C64::new(f64::INFINITY, 0.0),
            status,
        };
    }
    let (a, b) = sol.terminal();
    let eta = p.eta();
    let value = q.w * eta + q.u * (q.u - 1.0) * (0.5 * eta * q.t) - b * p.v0() + a;
    CgfResult {
        value,
        status: CgfStatus::Converged,
    }
}

/// Real-valued convenience wrapper: `m(u, 0, t)` or an error on explosion.
pub fn cgf_real(p: &ModelParams, u: f64, t: f64, tol: f64) -> Result<f64> {
    let r = cgf(p, &CgfQuery::real(u, t), tol)?;
    if r.is_converged() {
        Ok(r.value.re)
    } else {
        Err(Error::OutsideDomain)
    }
}

/// `E[exp(z X_t)] = exp(m(z, 0, t))`.
///
/// Inside the strip `0 <= Re z <= 1` the expectation is always finite; a
/// divergent solve is reported as [`Error::OutsideDomain`].
pub fn characteristic_fn(p: &ModelParams, z: C64, t: f64, tol: f64) -> Result<C64> {
    let q = CgfQuery::new(z, C64::new(0.0, 0.0), t);
    let r = cgf(p, &q, tol)?;
    if !r.is_converged() {
        return Err(Error::OutsideDomain);
    }
    Ok(r.value.exp())
}
