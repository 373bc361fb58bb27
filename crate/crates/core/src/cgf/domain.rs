//! Effective-domain estimate for `d < 0` by bisection on moment explosion.

use super::{riccati_solve, CgfQuery, DEFAULT_MAX_NODES};
use crate::model::ModelParams;
use crate::{Error, Result};

/// Default horizon, in model time units.
pub const DEFAULT_HORIZON: f64 = 200.0;

const ODE_TOL: f64 = 1e-8;
const MAX_EXCURSION: f64 = 1e4;

/// `[u_minus, u_plus]`: arguments whose Riccati solution survives the horizon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentDomain {
    pub u_minus: f64,
    pub u_plus: f64,
}

impl MomentDomain {
    pub fn contains(&self, u: f64) -> bool {
        (self.u_minus..=self.u_plus).contains(&u)
    }
}

fn survives(p: &ModelParams, u: f64, horizon: f64) -> Result<bool> {
    let sol = riccati_solve(p, &CgfQuery::real(u, horizon), ODE_TOL, DEFAULT_MAX_NODES)?;
    Ok(sol.blow_up_time.is_none())
}

/// Bisect the first `u` beyond `inside` (stepping by `dir`) that explodes.
fn edge(p: &ModelParams, inside: f64, dir: f64, horizon: f64, tol: f64) -> Result<f64> {
    let mut lo = inside;
    let mut step = 0.5;
    let mut hi = inside + dir * step;
    while survives(p, hi, horizon)? {
        lo = hi;
        step *= 2.0;
        if step > MAX_EXCURSION {
            return Err(Error::HorizonTooShort);
        }
        hi = inside + dir * step;
    }
    while (hi - lo).abs() > tol {
        let mid = 0.5 * (lo + hi);
        if survives(p, mid, horizon)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// Estimate `u_- <= 0` and `u_+ >= 1` for `d < 0`.
///
/// `u` is deemed inside when the Riccati solution does not blow up before
/// `horizon`. Returned endpoints are the inner edges of brackets of width
/// at most `tol`, so the estimate always contains `[0, 1]`.
pub fn moment_domain_estimate(p: &ModelParams, horizon: f64, tol: f64) -> Result<MomentDomain> {
    if !(p.d() < 0.0) {
        return Err(Error::OutOfRange("d"));
    }
    p.require_open_d()?;
    if p.xi() == 0.0 {
        return Err(Error::OutOfRange("xi"));
    }
    if !(horizon > 0.0) {
        return Err(Error::OutOfRange("horizon"));
    }
    if !(tol > 0.0) {
        return Err(Error::OutOfRange("tol"));
    }
    Ok(MomentDomain {
        u_minus: edge(p, 0.0, -1.0, horizon, tol)?,
        u_plus: edge(p, 1.0, 1.0, horizon, tol)?,
    })
}
