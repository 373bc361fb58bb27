//! Verification suites behind `fheston verify`.
//!
//! Each suite runs a fixed protocol on default parameters. Model flags
//! replace the corresponding defaults; for `smalltime` and `largetime` a
//! supplied `--d` also selects which sign's protocol runs.

use fheston_core::asymptotics::{lambda_plus, large_time_cgf_limit_plus};
use fheston_core::cgf::{
    bounds_psi, cgf_real, heston_tan_mgf, riccati_solve, series_b_kappa0, CgfQuery,
    SeriesCoefficients, DEFAULT_MAX_NODES,
};
use fheston_core::pricing::{bs_call_price, fourier_call_price, FourierConfig};
use fheston_core::simulation::Scheme;
use fheston_core::{ModelParams, RawParams};

use crate::args::{Opts, Suite};
use crate::commands::mc_config;
use crate::output::Table;
use crate::parallel::{mc_call_price, mc_naive_call_price};
use crate::CliError;

/// One verification row.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub expected: f64,
    pub observed: f64,
    /// Deviation measured against `tolerance`.
    pub gap: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    pub fn relative(name: String, expected: f64, observed: f64, tolerance: f64) -> Self {
        let gap = ((observed - expected) / expected).abs();
        Self::with_gap(name, expected, observed, gap, tolerance)
    }

    pub fn absolute(name: String, expected: f64, observed: f64, tolerance: f64) -> Self {
        Self::with_gap(
            name,
            expected,
            observed,
            (observed - expected).abs(),
            tolerance,
        )
    }

    pub fn with_gap(name: String, expected: f64, observed: f64, gap: f64, tolerance: f64) -> Self {
        Self {
            name,
            expected,
            observed,
            gap,
            tolerance,
            pass: gap <= tolerance,
        }
    }

    /// A yes/no property.
    pub fn flag(name: String, holds: bool) -> Self {
        let observed = if holds { 1.0 } else { 0.0 };
        Self {
            name,
            expected: 1.0,
            observed,
            gap: 1.0 - observed,
            tolerance: 0.0,
            pass: holds,
        }
    }
}

pub fn to_table(checks: &[Check]) -> Table {
    let mut t = Table::new(&["name", "expected", "observed", "gap", "tolerance", "pass"]);
    for c in checks {
        t.push(vec![
            c.name.clone().into(),
            c.expected.into(),
            c.observed.into(),
            c.gap.into(),
            c.tolerance.into(),
            c.pass.into(),
        ]);
    }
    t
}

pub fn run_suite(suite: Suite, o: &Opts) -> Result<Vec<Check>, CliError> {
    match suite {
        Suite::Smalltime => small_time(o),
        Suite::Largetime => large_time(o),
        Suite::Bounds => bounds(o),
        Suite::Oracle => oracle(o),
        Suite::Mc => monte_carlo(o),
    }
}

const fn raw(kappa: f64, theta: f64, xi: f64, v0: f64, eta: f64, d: f64) -> RawParams {
    RawParams {
        kappa,
        theta,
        xi,
        v0,
        eta,
        d,
    }
}

/// Driftless sets for the small-time limit; `eta = 0` for `d < 0` because
/// the `eta` term decays only like `t^{-d}`.
const SMALL_NEG: RawParams = raw(0.0, 0.0, 0.1, 0.04, 0.0, -0.2);
const SMALL_POS: RawParams = raw(0.0, 0.0, 0.5, 0.02, 0.2, 0.3);
/// `kappa / xi^2` tiny so the `t^{1+d/2}` regime is reached by `t = 200`.
const LARGE_POS: RawParams = raw(0.005, 8.0, 2.0, 0.04, 0.0, 0.2);
/// Small `kappa theta` so the `O(t^d)` correction from `A` is negligible.
const LARGE_NEG: RawParams = raw(1.0, 0.001, 0.2, 0.04, 0.1, -0.2);
const BOUNDS: RawParams = raw(1.0, 0.04, 0.2, 0.04, 0.0, 0.2);
const TAN: RawParams = raw(0.0, 0.0, 0.5, 0.04, 0.0, 0.0);
const MC_GRID: RawParams = raw(1.0, 0.04, 0.2, 0.04, 0.01, 0.2);
const MIXING: RawParams = raw(1.0, 0.04, 0.3, 0.04, 0.0, 0.0);

fn by_sign(o: &Opts, neg: RawParams, pos: RawParams) -> Result<Vec<ModelParams>, CliError> {
    match o.d {
        Some(d) if d < 0.0 => Ok(vec![o.params_over(neg)?]),
        Some(d) if d > 0.0 => Ok(vec![o.params_over(pos)?]),
        Some(_) => Err(CliError::Invalid("OutOfRange: d".into())),
        None => Ok(vec![o.params_over(neg)?, o.params_over(pos)?]),
    }
}

fn ode_tol(o: &Opts) -> f64 {
    o.tol.unwrap_or(1e-10)
}

/// `t^{1+d} m(u / t^{1+d}, t) -> v0 u^2 / (2 Gamma(2+d))` for `d < 0`, and
/// `t m(u / t, t) -> eta u^2 / 2` for `d > 0`, over `t = 1e-1 .. 1e-4`.
pub fn small_time(o: &Opts) -> Result<Vec<Check>, CliError> {
    let u = o.u.unwrap_or(1.0);
    let ts: [f64; 4] = [1e-1, 1e-2, 1e-3, 1e-4];
    let mut out = Vec::new();
    for p in by_sign(o, SMALL_NEG, SMALL_POS)? {
        let d = p.d();
        let (limit, power) = if d < 0.0 {
            (p.v0() * u * u / (2.0 * gamma(2.0 + d)), 1.0 + d)
        } else {
            (p.eta() * u * u / 2.0, 1.0)
        };
        let mut gaps = Vec::new();
        for (i, &t) in ts.iter().enumerate() {
            let s = t.powf(power);
            let m = cgf_real(&p, u / s, t, ode_tol(o))?;
            let last = i + 1 == ts.len();
            let tol = if last { 0.01 } else { f64::INFINITY };
            let c = Check::relative(format!("scaled_cgf d={d} t={t:e}"), limit, s * m, tol);
            gaps.push(c.gap);
            out.push(c);
        }
        let monotone = gaps.windows(2).all(|w| w[1] <= w[0]);
        out.push(Check::flag(format!("scaled_cgf_monotone d={d}"), monotone));
    }
    Ok(out)
}

/// `t^{-(1+d/2)} m(u, t) -> Lambda_plus(u)` for `d > 0` and
/// `t^{-1} m(u, t) -> u(u-1) eta / 2` for `d < 0`, at `t = 200`.
///
/// For `d > 0` the printed limit is checked together with the limit
/// `Lambda_plus / (1 + d/2)` obtained by integrating the Riccati asymptote.
pub fn large_time(o: &Opts) -> Result<Vec<Check>, CliError> {
    let t = o.t.unwrap_or(200.0);
    let mut out = Vec::new();
    for p in by_sign(o, LARGE_NEG, LARGE_POS)? {
        let d = p.d();
        if d > 0.0 {
            let speed = t.powf(1.0 + 0.5 * d);
            for u in [0.25, 0.5, 0.75] {
                let scaled = cgf_real(&p, u, t, ode_tol(o))? / speed;
                out.push(Check::relative(
                    format!("large_time_plus u={u}"),
                    lambda_plus(u, &p)?,
                    scaled,
                    0.02,
                ));
                out.push(Check::relative(
                    format!("large_time_plus_integrated u={u}"),
                    large_time_cgf_limit_plus(u, &p)?,
                    scaled,
                    0.02,
                ));
            }
        } else {
            let scale = (p.eta() / 8.0).max(f64::MIN_POSITIVE);
            for u in [0.0, 0.5, 1.0] {
                let scaled = cgf_real(&p, u, t, ode_tol(o))? / t;
                let limit = 0.5 * u * (u - 1.0) * p.eta() + 0.0;
                let gap = (scaled - limit).abs() / scale;
                out.push(Check::with_gap(
                    format!("large_time_minus u={u}"),
                    limit,
                    scaled,
                    gap,
                    0.02,
                ));
            }
        }
    }
    Ok(out)
}

/// `psi_- <= B <= psi_+` at every node of the adaptive solution.
pub fn bounds(o: &Opts) -> Result<Vec<Check>, CliError> {
    let p = o.params_over(BOUNDS)?;
    let horizon = o.t.unwrap_or(50.0);
    let mut out = Vec::new();
    for i in 1..=9 {
        let u = 0.1 * i as f64;
        let sol = riccati_solve(
            &p,
            &CgfQuery::real(u, horizon),
            ode_tol(o),
            DEFAULT_MAX_NODES,
        )?;
        let mut worst: f64 = 0.0;
        for (s, b) in sol.grid.nodes().iter().zip(&sol.b) {
            let (lo, hi) = bounds_psi(&p, u, *s)?;
            worst = worst.max(b.re - hi).max(lo - b.re);
        }
        let reached = sol.reached(horizon);
        out.push(Check::with_gap(
            format!("psi_bounds u={u:.1}"),
            0.0,
            worst,
            worst.max(0.0),
            1e-9,
        ));
        out.push(Check::flag(
            format!("psi_bounds_reached_horizon u={u:.1}"),
            reached,
        ));
    }
    Ok(out)
}

/// Closed-form `d = kappa = 0` formula, the power series and its Taylor
/// pattern against the Riccati solver.
pub fn oracle(o: &Opts) -> Result<Vec<Check>, CliError> {
    let p = o.params_over(TAN)?;
    let mut out = Vec::new();
    for u in [-1.0, 0.5, 2.0] {
        for t in [0.25, 1.0] {
            let exact = heston_tan_mgf(p.v0(), p.xi(), u, t)?;
            let ode = cgf_real(&p, u, t, ode_tol(o))?;
            out.push(Check::relative(
                format!("tan_formula u={u} t={t}"),
                exact,
                ode,
                1e-6,
            ));
        }
    }
    let t = 0.5;
    for d in [-0.3, 0.2] {
        let q = p.with(|r| r.d = d)?;
        for u in [-0.4, 0.5, 1.4] {
            let series = series_b_kappa0(&q, u, t, 80)?;
            let sol = riccati_solve(&q, &CgfQuery::real(u, t), ode_tol(o), DEFAULT_MAX_NODES)?;
            let ode = sol.terminal().1.re;
            out.push(Check::relative(
                format!("series d={d} u={u} t={t}"),
                series,
                ode,
                1e-6,
            ));
        }
    }
    let xi = p.xi();
    let c = SeriesCoefficients::new(xi, 0.0, 0.0, 3);
    let pattern = [
        ("taylor_u2", 0.5, c.alpha[0] / 2.0),
        ("taylor_u4", xi.powi(2) / 24.0, -c.alpha[1] / 4.0),
        ("taylor_u6", xi.powi(4) / 240.0, c.alpha[2] / 8.0),
    ];
    for (name, expected, observed) in pattern {
        out.push(Check::absolute(name.into(), expected, observed, 1e-12));
    }
    Ok(out)
}

/// Deterministic-variance reduction, Fourier against Monte Carlo on a grid,
/// and the mixing estimator against naive Euler.
pub fn monte_carlo(o: &Opts) -> Result<Vec<Check>, CliError> {
    let cfg = mc_config(o, Scheme::FullTruncation);
    let fcfg = FourierConfig::default();
    let mut out = Vec::new();

    for d in [-0.3, 0.0, 0.3] {
        let p = ModelParams::new(0.0, 0.0, 0.0, 0.04, 0.01, d)?;
        let (x, t): (f64, f64) = (0.1, 1.0);
        let sigma = ((0.01 * t + 0.04 * t.powf(d + 1.0) / gamma(d + 2.0)) / t).sqrt();
        let bs = bs_call_price(x, t, sigma);
        let f = fourier_call_price(&p, x, t, &fcfg)?;
        out.push(Check::relative(
            format!("deterministic_fourier d={d}"),
            bs,
            f,
            1e-4,
        ));
        let small = fheston_core::simulation::McConfig { n_paths: 64, ..cfg };
        let m = mc_call_price(&p, x, t, &small)?;
        out.push(Check::relative(
            format!("deterministic_mc d={d}"),
            bs,
            m.mean,
            1e-4,
        ));
        out.push(Check::absolute(
            format!("deterministic_mc_se d={d}"),
            0.0,
            m.std_error,
            0.0,
        ));
    }

    for d in [-0.2, 0.2] {
        let p = o.params_over(RawParams { d, ..MC_GRID })?;
        for t in [0.5, 2.0] {
            for x in [-0.2, 0.0, 0.2] {
                let f = fourier_call_price(&p, x, t, &fcfg)?;
                let m = mc_call_price(&p, x, t, &cfg)?;
                let gap = (f - m.mean).abs() / m.std_error;
                out.push(Check::with_gap(
                    format!("fourier_vs_mc d={d} t={t} x={x}"),
                    f,
                    m.mean,
                    gap,
                    3.0,
                ));
            }
        }
    }

    let p = o.params_over(MIXING)?;
    if p.d() == 0.0 {
        let (x, t) = (0.0, 1.0);
        let mix = mc_call_price(&p, x, t, &cfg)?;
        let naive = mc_naive_call_price(&p, x, t, &cfg)?;
        let combined = mix.std_error.hypot(naive.std_error);
        let gap = (mix.mean - naive.mean).abs() / combined;
        out.push(Check::with_gap(
            "mixing_vs_naive".into(),
            naive.mean,
            mix.mean,
            gap,
            3.0,
        ));
        out.push(Check::flag(
            "mixing_se_smaller".into(),
            mix.std_error < naive.std_error,
        ));
    }
    Ok(out)
}

fn gamma(x: f64) -> f64 {
    // arguments here are in [1.5, 2.5], always valid
    fheston_core::special::gamma(x).expect("positive argument")
}
