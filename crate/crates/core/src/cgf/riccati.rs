//! Riccati system for the fractional Heston transform.
//!
//! `B' = -kappa B - (xi^2/2) B^2 - a s^d - b s^(d-1)`, `B(0) = 0`, with
//! `a = u(u-1) / (2 Gamma(d+1))` and `b = w / Gamma(d)`, and
//! `A(t) = -kappa theta I(t)` where `I' = B`.
//!
//! The forcing is not smooth at the origin (`s^d` with `d < 0`, or the
//! `s^(d-1)` term when `w != 0`), so the solution is started from its
//! two-term Picard expansion on `(0, s0]` and handed to a Dormand-Prince
//! 5(4) stepper from `s0` on. `s0` is picked so that the neglected third
//! Picard term is below the requested relative tolerance.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64 as C64;

use super::CgfQuery;
use crate::model::{ModelParams, TimeGrid};
use crate::special::{gamma_pos, rgamma};
use crate::{Error, Result};

/// `|B|` above which the solution is declared divergent.
pub const BLOW_UP_THRESHOLD: f64 = 1e8;

/// How the integration ended when it did not reach maturity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Divergence {
    /// `|B|` crossed [`BLOW_UP_THRESHOLD`] (or became non-finite).
    Threshold,
    /// The step size collapsed while `|B|` was still below the threshold.
    StepCollapse,
}

/// Sampled trajectories of `A` and `B`.
#[derive(Debug, Clone)]
pub struct RiccatiSolution {
    pub grid: TimeGrid,
    pub a: Vec<C64>,
    pub b: Vec<C64>,
    /// First time at which divergence was detected; no values are stored past it.
    pub blow_up_time: Option<f64>,
    pub divergence: Option<Divergence>,
}

impl RiccatiSolution {
    /// `(A, B)` at the last stored node.
    pub fn terminal(&self) -> (C64, C64) {
        (*self.a.last().unwrap(), *self.b.last().unwrap())
    }

    pub fn reached(&self, t: f64) -> bool {
        self.blow_up_time.is_none() && self.grid.last() == t
    }
}

#[derive(Debug, Clone, Copy)]
struct Forcing {
    kappa: f64,
    half_xi2: f64,
    d: f64,
    a: C64,
    b: C64,
}

impl Forcing {
    fn new(p: &ModelParams, q: &CgfQuery) -> Self {
        let d = p.d();
        let uu = q.u * (q.u - 1.0);
        Self {
            kappa: p.kappa(),
            half_xi2: 0.5 * p.xi() * p.xi(),
            d,
            a: uu * (0.5 / gamma_pos(d + 1.0)),
            b: q.w * rgamma(d),
        }
    }

    #[inline]
    fn rhs(&self, s: f64, b: C64) -> C64 {
        let sd = libm::pow(s, self.d);
        let mut f = -self.kappa * b - self.half_xi2 * b * b - self.a * sd;
        if self.b != C64::new(0.0, 0.0) {
            f -= self.b * (sd / s);
        }
        f
    }
}

/// Two-term Picard expansion of `(B, I)` near the origin.
#[derive(Debug, Clone, Copy)]
struct Startup {
    c: C64,
    e: C64,
    kappa: f64,
    half_xi2: f64,
    d: f64,
}

impl Startup {
    fn new(f: &Forcing) -> Self {
        let d = f.d;
        let e = if f.b == C64::new(0.0, 0.0) {
            C64::new(0.0, 0.0)
        } else {
            -f.b / d
        };
        Self {
            c: -f.a / (d + 1.0),
            e,
            kappa: f.kappa,
            half_xi2: f.half_xi2,
            d,
        }
    }

    /// Largest `s` at which the relative size of the second Picard term is `eps`.
    fn handoff(&self, eps: f64) -> f64 {
        let d = self.d;
        let share = eps / 3.0;
        let mut s0 = f64::INFINITY;
        if self.kappa > 0.0 {
            s0 = s0.min(share / self.kappa);
        }
        let xi2 = 2.0 * self.half_xi2;
        if xi2 > 0.0 {
            let c = self.c.norm();
            if c > 0.0 {
                s0 = s0.min(libm::pow(share / (xi2 * c), 1.0 / (d + 2.0)));
            }
            let e = self.e.norm();
            if e > 0.0 {
                s0 = s0.min(libm::pow(share / (xi2 * e), 1.0 / (d + 1.0)));
            }
        }
        s0
    }

    fn eval(&self, s: f64) -> (C64, C64) {
        let d = self.d;
        let (c, e, k, h) = (self.c, self.e, self.kappa, self.half_xi2);
        let p = |q: f64| libm::pow(s, q);
        let b = c * p(d + 1.0) + e * p(d)
            - k * (c * p(d + 2.0) / (d + 2.0))
            - h * (c * c * p(2.0 * d + 3.0) / (2.0 * d + 3.0));
        let i = c * p(d + 2.0) / (d + 2.0)
            - k * (c * p(d + 3.0) / ((d + 2.0) * (d + 3.0)))
            - h * (c * c * p(2.0 * d + 4.0) / ((2.0 * d + 3.0) * (2.0 * d + 4.0)));
        if e == C64::new(0.0, 0.0) {
            return (b, i);
        }
        // w-dependent terms; only reachable for d > 0.
        let b_w = -k * (e * p(d + 1.0) / (d + 1.0))
            - h * (c * e * 2.0 * p(2.0 * d + 2.0) / (2.0 * d + 2.0)
                + e * e * p(2.0 * d + 1.0) / (2.0 * d + 1.0));
        let i_w = e * p(d + 1.0) / (d + 1.0)
            - k * (e * p(d + 2.0) / ((d + 1.0) * (d + 2.0)))
            - h * (c * e * 2.0 * p(2.0 * d + 3.0) / ((2.0 * d + 2.0) * (2.0 * d + 3.0))
                + e * e * p(2.0 * d + 2.0) / ((2.0 * d + 1.0) * (2.0 * d + 2.0)));
        (b + b_w, i + i_w)
    }
}

// Dormand-Prince 5(4) tableau.
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

/// Solve the Riccati system on `[0, q.t]`.
///
/// `tol` is the per-step relative tolerance (absolute floor `1e-3 * tol`);
/// `max_nodes` bounds the number of accepted steps.
pub fn riccati_solve(
    p: &ModelParams,
    q: &CgfQuery,
    tol: f64,
    max_nodes: usize,
) -> Result<RiccatiSolution> {
    q.check()?;
    if !(tol > 0.0) {
        return Err(Error::OutOfRange("tol"));
    }
    if q.w != C64::new(0.0, 0.0) && p.d() <= 0.0 {
        // I^d with d <= 0 has no pointwise transform in w.
        return Err(Error::OutOfRange("w"));
    }
    let t = q.t;
    let f = Forcing::new(p, q);
    let start = Startup::new(&f);

    let eps = libm::sqrt(tol).min(1e-3);
    let s0 = start.handoff(eps).min(t);
    let (b0, i0) = start.eval(s0);

    let kappa_theta = p.kappa() * p.theta();
    let mut nodes = vec![0.0, s0];
    let mut bs = vec![C64::new(0.0, 0.0), b0];
    let mut is = vec![C64::new(0.0, 0.0), i0];
    let mut blow_up_time = None;
    let mut divergence = None;

    if !(b0.norm() <= BLOW_UP_THRESHOLD) {
        blow_up_time = Some(s0);
        divergence = Some(Divergence::Threshold);
        nodes.pop();
        bs.pop();
        is.pop();
    } else if s0 < t {
        let atol = 1e-3 * tol;
        let mut s = s0;
        let mut y = [b0, i0];
        let mut h = s0.min(t - s0);
        let mut k1 = f.rhs(s, y[0]);
        loop {
            if nodes.len() > max_nodes {
                return Err(Error::QuadratureFailure("riccati node limit"));
            }
            let last = s + h >= t * (1.0 - 1e-14);
            if last {
                h = t - s;
            }
            let b = y[0];
            let k2 = f.rhs(s + C2 * h, b + h * (A21 * k1));
            let b3 = b + h * (A31 * k1 + A32 * k2);
            let k3 = f.rhs(s + C3 * h, b3);
            let b4 = b + h * (A41 * k1 + A42 * k2 + A43 * k3);
            let k4 = f.rhs(s + C4 * h, b4);
            let b5 = b + h * (A51 * k1 + A52 * k2 + A53 * k3 + A54 * k4);
            let k5 = f.rhs(s + C5 * h, b5);
            let b6 = b + h * (A61 * k1 + A62 * k2 + A63 * k3 + A64 * k4 + A65 * k5);
            let s_new = if last { t } else { s + h };
            let k6 = f.rhs(s_new, b6);
            let b_new = b + h * (B1 * k1 + B3 * k3 + B4 * k4 + B5 * k5 + B6 * k6);
            let k7 = f.rhs(s_new, b_new);
            // I' = B: the stage values of B are the stage derivatives of I.
            let i_new = y[1] + h * (B1 * b + B3 * b3 + B4 * b4 + B5 * b5 + B6 * b6);
            let err_b = h * (E1 * k1 + E3 * k3 + E4 * k4 + E5 * k5 + E6 * k6 + E7 * k7);
            let err_i = h * (E1 * b + E3 * b3 + E4 * b4 + E5 * b5 + E6 * b6 + E7 * b_new);

            let scale_b = atol + tol * b.norm().max(b_new.norm());
            let scale_i = atol + tol * y[1].norm().max(i_new.norm());
            let err = (err_b.norm() / scale_b).max(err_i.norm() / scale_i);

            if !err.is_finite() || !b_new.re.is_finite() || !b_new.im.is_finite() {
                h *= 0.2;
            } else if err <= 1.0 {
                if b_new.norm() > BLOW_UP_THRESHOLD {
                    blow_up_time = Some(s_new);
                    divergence = Some(Divergence::Threshold);
                    break;
                }
                s = s_new;
                y = [b_new, i_new];
                k1 = k7;
                nodes.push(s);
                bs.push(b_new);
                is.push(i_new);
                if last {
                    break;
                }
                let factor = if err == 0.0 {
                    5.0
                } else {
                    (0.9 * libm::pow(err, -0.2)).clamp(0.2, 5.0)
                };
                h *= factor;
            } else {
                h *= (0.9 * libm::pow(err, -0.2)).clamp(0.1, 0.9);
            }
            if h <= 1e-14 * s {
                blow_up_time = Some(s);
                divergence = Some(Divergence::StepCollapse);
                break;
            }
        }
    }

    let a = is.iter().map(|i| -kappa_theta * i).collect();
    Ok(RiccatiSolution {
        grid: TimeGrid::from_sorted_unchecked(nodes),
        a,
        b: bs,
        blow_up_time,
        divergence,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(kappa: f64, xi: f64, d: f64) -> ModelParams {
        ModelParams::new(kappa, 0.04, xi, 0.04, 0.01, d).unwrap()
    }

    #[test]
    fn zero_forcing_gives_zero_solution() {
        for u in [0.0, 1.0] {
            let sol = riccati_solve(
                &params(1.0, 0.3, -0.2),
                &CgfQuery::real(u, 2.0),
                1e-10,
                10_000,
            )
            .unwrap();
            assert!(sol.reached(2.0));
            assert!(sol.b.iter().chain(sol.a.iter()).all(|z| z.norm() == 0.0));
        }
    }

    #[test]
    fn initial_conditions_hold() {
        let sol = riccati_solve(
            &params(1.0, 0.3, 0.2),
            &CgfQuery::real(0.4, 1.0),
            1e-10,
            10_000,
        )
        .unwrap();
        assert_eq!(sol.grid.nodes()[0], 0.0);
        assert_eq!(sol.a[0], C64::new(0.0, 0.0));
        assert_eq!(sol.b[0], C64::new(0.0, 0.0));
    }

    #[test]
    fn linear_case_matches_closed_form() {
        // xi = 0, kappa = 0: B(t) = u(1-u) t^(d+1) / (2 Gamma(d+2)).
        for d in [-0.45, -0.3, 0.0, 0.3, 0.5] {
            let p = ModelParams::new(0.0, 0.0, 0.0, 0.04, 0.0, d).unwrap();
            let u = 2.5;
            let t = 1.7;
            let sol = riccati_solve(&p, &CgfQuery::real(u, t), 1e-12, 10_000).unwrap();
            let exact = u * (1.0 - u) * libm::pow(t, d + 1.0) / (2.0 * libm::tgamma(d + 2.0));
            let (_, b) = sol.terminal();
            assert!(
                (b.re / exact - 1.0).abs() < 1e-10,
                "d = {d}: {} vs {exact}",
                b.re
            );
        }
    }

    #[test]
    fn exponential_decay_case_with_kappa() {
        // xi = 0, d = 0: B' = -kappa B - a, B = -(a/kappa)(1 - e^{-kappa t}),
        // I = -(a/kappa)(t - (1 - e^{-kappa t})/kappa).
        let p = ModelParams::new(2.0, 0.3, 0.0, 0.04, 0.0, 0.0).unwrap();
        let u = -0.7;
        let t = 3.0;
        let sol = riccati_solve(&p, &CgfQuery::real(u, t), 1e-12, 10_000).unwrap();
        let a = u * (u - 1.0) / 2.0;
        let k: f64 = 2.0;
        let b = -(a / k) * (1.0 - libm::exp(-k * t));
        let i = -(a / k) * (t - (1.0 - libm::exp(-k * t)) / k);
        let (a_t, b_t) = sol.terminal();
        assert!((b_t.re / b - 1.0).abs() < 1e-10);
        assert!((a_t.re / (-k * 0.3 * i) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn w_requires_positive_d() {
        let q = CgfQuery::new(C64::new(0.5, 0.0), C64::new(0.1, 0.0), 1.0);
        assert_eq!(
            riccati_solve(&params(1.0, 0.3, -0.1), &q, 1e-10, 1000).unwrap_err(),
            Error::OutOfRange("w")
        );
        assert!(riccati_solve(&params(1.0, 0.3, 0.2), &q, 1e-10, 10_000).is_ok());
    }

    #[test]
    fn w_only_linear_case() {
        // xi = 0, kappa = 0, u = 0: B = -w s^d / Gamma(d+1).
        let p = ModelParams::new(0.0, 0.0, 0.0, 0.04, 0.0, 0.25).unwrap();
        let q = CgfQuery::new(C64::new(0.0, 0.0), C64::new(0.3, 0.0), 2.0);
        let sol = riccati_solve(&p, &q, 1e-12, 10_000).unwrap();
        let exact = -0.3 * libm::pow(2.0, 0.25) / libm::tgamma(1.25);
        assert!((sol.terminal().1.re / exact - 1.0).abs() < 1e-10);
    }

    #[test]
    fn detects_blow_up() {
        // kappa = 0, d = 0: B = -(sqrt(a)/xi) tan(xi sqrt(a) t / 2) explodes at
        // t* = pi / (xi sqrt(u(u-1))).
        let p = ModelParams::new(0.0, 0.0, 1.0, 0.04, 0.0, 0.0).unwrap();
        let u = 3.0;
        let t_star = core::f64::consts::PI / libm::sqrt(u * (u - 1.0));
        let sol = riccati_solve(&p, &CgfQuery::real(u, 2.0 * t_star), 1e-10, 100_000).unwrap();
        let tb = sol.blow_up_time.expect("must blow up");
        assert!(
            tb < t_star * 1.001 && tb > t_star * 0.99,
            "{tb} vs {t_star}"
        );
        assert!(sol.b.iter().all(|b| b.norm() <= BLOW_UP_THRESHOLD));
    }

    #[test]
    fn node_budget_is_enforced() {
        let err = riccati_solve(&params(1.0, 0.3, 0.2), &CgfQuery::real(0.3, 50.0), 1e-12, 3)
            .unwrap_err();
        assert_eq!(err, Error::QuadratureFailure("riccati node limit"));
    }
}
