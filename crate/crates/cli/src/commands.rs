use fheston_core::asymptotics::{
    option_asymptote_large_time, rate_minus_star, rate_plus_star, small_rate_minus,
    small_rate_plus, smile_large_time, smile_small_time, Branch, LargeTimeRate, OptionPosition,
};
use fheston_core::cgf::{
    cgf, integrated_mean_vd, mean_vd, moment_domain_estimate, CgfQuery, CgfStatus, MomentDomain,
    DEFAULT_HORIZON,
};
use fheston_core::pricing::{
    fourier_call_price, fourier_price, fourier_smile_point, implied_vol, FourierConfig, OptionKind,
    OptionQuote,
};
use fheston_core::simulation::{McConfig, MeanVdQuantity, MeanVdSampler, Scheme};
use fheston_core::{Complex64, Error as CoreError, ModelParams};

use crate::args::{Cli, Command, Kind, Opts, Quantity, Regime, SchemeArg};
use crate::output::{Cell, Table};
use crate::parallel::{mc_call_price, run_parallel};
use crate::{verify, CliError};

/// A table to print, and a reason to exit 1 after printing it.
pub struct Outcome {
    pub table: Table,
    pub failure: Option<String>,
}

impl From<Table> for Outcome {
    fn from(table: Table) -> Self {
        Outcome {
            table,
            failure: None,
        }
    }
}

const DEFAULT_TOL: f64 = 1e-10;
const DEFAULT_LADDER: (f64, f64, usize) = (-0.2, 0.2, 9);
const DOMAIN_TOL: f64 = 1e-3;

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let o = cli.opts.resolve()?;
    match &cli.command {
        Command::Cgf => run_cgf(&o),
        Command::Price { kind } => run_price(&o, *kind).map(Into::into),
        Command::Smile { regime } => run_smile(&o, *regime).map(Into::into),
        Command::Asymptote => run_asymptote(&o).map(Into::into),
        Command::Simulate { quantity, scheme } => {
            run_simulate(&o, *quantity, *scheme).map(Into::into)
        }
        Command::Ratefn { regime } => run_ratefn(&o, *regime).map(Into::into),
        Command::Verify { suite } => {
            let checks = verify::run_suite(*suite, &o)?;
            let failed = checks.iter().filter(|c| !c.pass).count();
            Ok(Outcome {
                table: verify::to_table(&checks),
                failure: (failed > 0).then(|| format!("Verification: {failed} check(s) failed")),
            })
        }
    }
}

fn tol(o: &Opts) -> Result<f64, CliError> {
    let t = o.tol.unwrap_or(DEFAULT_TOL);
    if !(t > 0.0) {
        return Err(CliError::Invalid("OutOfRange: tol".into()));
    }
    Ok(t)
}

fn fourier_config(o: &Opts) -> Result<FourierConfig, CliError> {
    let tol = tol(o)?;
    Ok(FourierConfig {
        damping: o.damping.unwrap_or(0.5),
        quad_tol: tol,
        ode_tol: tol,
    })
}

pub(crate) fn mc_config(o: &Opts, scheme: Scheme) -> McConfig {
    let d = McConfig::default();
    McConfig {
        n_paths: o.paths.unwrap_or(d.n_paths),
        steps_per_unit_time: o.steps.unwrap_or(d.steps_per_unit_time),
        seed: o.seed.unwrap_or(d.seed),
        scheme,
    }
}

fn domain(p: &ModelParams) -> Result<MomentDomain, CliError> {
    Ok(moment_domain_estimate(p, DEFAULT_HORIZON, DOMAIN_TOL)?)
}

fn run_cgf(o: &Opts) -> Result<Outcome, CliError> {
    let p = o.params()?;
    let u = o.require(o.u, "u")?;
    let t = o.require(o.t, "t")?;
    let w = o.w.unwrap_or(0.0);
    let q = CgfQuery::new(Complex64::new(u, 0.0), Complex64::new(w, 0.0), t);
    let r = cgf(&p, &q, tol(o)?)?;
    let status = match r.status {
        CgfStatus::Converged => "converged",
        CgfStatus::BlewUp => "blew_up",
        CgfStatus::OutsideDomain => "outside_domain",
    };
    let mut table = Table::new(&["u", "w", "t", "value", "status"]);
    table.push(vec![
        u.into(),
        w.into(),
        t.into(),
        r.value.re.into(),
        status.into(),
    ]);
    let failure = (!r.is_converged()).then(|| format!("Divergence: {status}"));
    Ok(Outcome { table, failure })
}

/// Implied vol of a model price, or NaN when the price sits on a bound.
fn vol_or_nan(x: f64, t: f64, price: f64, kind: OptionKind) -> Result<f64, CliError> {
    match implied_vol(&OptionQuote::new(x, t, price)?, kind) {
        Ok(v) => Ok(v),
        Err(CoreError::NearBound | CoreError::NoSolution) => Ok(f64::NAN),
        Err(e) => Err(e.into()),
    }
}

fn run_price(o: &Opts, kind: Kind) -> Result<Table, CliError> {
    let p = o.params()?;
    let x = o.require(o.x, "x")?;
    let t = o.require(o.t, "t")?;
    let kind = match kind {
        Kind::Call => OptionKind::Call,
        Kind::Put => OptionKind::Put,
    };
    let price = fourier_price(&p, x, t, kind, &fourier_config(o)?)?;
    let mut table = Table::new(&["x", "t", "price", "implied_vol"]);
    table.push(vec![
        x.into(),
        t.into(),
        price.into(),
        vol_or_nan(x, t, price, kind)?.into(),
    ]);
    Ok(table)
}

fn run_smile(o: &Opts, regime: Regime) -> Result<Table, CliError> {
    let p = o.params()?;
    let t = o.require(o.t, "t")?;
    let cfg = fourier_config(o)?;
    let xs = o.ladder(DEFAULT_LADDER)?;
    let dom = match regime {
        Regime::Large if p.d() < 0.0 => Some(domain(&p)?),
        _ => None,
    };
    let mut table = Table::new(&["x", "t", "implied_vol", "source"]);
    for &x in &xs {
        let vol = match fourier_smile_point(&p, x, t, &cfg) {
            Ok(sp) => sp.implied_vol,
            Err(CoreError::NearBound | CoreError::NoSolution) => f64::NAN,
            Err(e) => return Err(e.into()),
        };
        table.push(vec![x.into(), t.into(), vol.into(), "fourier".into()]);
        let asymptotic = match regime {
            Regime::Small => smile_small_time(&p, x, t),
            Regime::Large => {
                let speed = if p.d() > 0.0 {
                    t.powf(1.0 + 0.5 * p.d())
                } else {
                    t
                };
                smile_large_time(&p, x / speed, t, dom)
            }
        };
        // the asymptotic formulas exclude some strikes (x = 0, d = 0, ...)
        if let Ok(sp) = asymptotic {
            table.push(vec![
                sp.log_strike.into(),
                t.into(),
                sp.implied_vol.into(),
                sp.source.as_str().into(),
            ]);
        }
    }
    Ok(table)
}

fn large_rate(p: &ModelParams) -> Result<LargeTimeRate, CliError> {
    if p.d() > 0.0 {
        Ok(LargeTimeRate::plus(p)?)
    } else if p.d() < 0.0 {
        Ok(LargeTimeRate::minus(p.eta(), domain(p)?)?)
    } else {
        Err(CliError::Invalid("OutOfRange: d".into()))
    }
}

fn run_asymptote(o: &Opts) -> Result<Table, CliError> {
    let p = o.params()?;
    let rate = large_rate(&p)?;
    let mut table = Table::new(&["x", "put", "call", "covered_call"]);
    for x in o.ladder(DEFAULT_LADDER)? {
        let mut row: Vec<Cell> = vec![x.into()];
        for kind in [
            OptionPosition::Put,
            OptionPosition::Call,
            OptionPosition::CoveredCall,
        ] {
            row.push(option_asymptote_large_time(&rate, x, kind)?.into());
        }
        table.push(row);
    }
    Ok(table)
}

fn run_simulate(o: &Opts, quantity: Quantity, scheme: SchemeArg) -> Result<Table, CliError> {
    let p = o.params()?;
    let t = o.require(o.t, "t")?;
    let scheme = match scheme {
        SchemeArg::FullTruncation => Scheme::FullTruncation,
        SchemeArg::Exact => Scheme::ExactTransition,
    };
    let cfg = mc_config(o, scheme);
    let mut table = Table::new(&[
        "quantity",
        "x",
        "t",
        "mean",
        "std_error",
        "n_paths",
        "seed",
        "reference",
    ]);
    let (name, x, est, reference) = match quantity {
        Quantity::Call => {
            let x = o.require(o.x, "x")?;
            let est = mc_call_price(&p, x, t, &cfg)?;
            let reference = fourier_call_price(&p, x, t, &fourier_config(o)?)?;
            ("call", x, est, reference)
        }
        Quantity::MeanVd => {
            let sampler = MeanVdSampler::new(&p, t, &cfg)?;
            let est = run_parallel(&sampler, cfg.n_paths)?;
            match sampler.quantity() {
                MeanVdQuantity::Pointwise => ("mean_vd", f64::NAN, est, mean_vd(&p, t)?),
                MeanVdQuantity::Integrated => (
                    "integrated_mean_vd",
                    f64::NAN,
                    est,
                    integrated_mean_vd(&p, t)?,
                ),
            }
        }
    };
    table.push(vec![
        name.into(),
        x.into(),
        t.into(),
        est.mean.into(),
        est.std_error.into(),
        est.n_paths.into(),
        est.seed.into(),
        reference.into(),
    ]);
    Ok(table)
}

fn branch_name(b: Branch) -> &'static str {
    match b {
        Branch::Interior => "interior",
        Branch::LinearLeft => "linear_left",
        Branch::LinearRight => "linear_right",
    }
}

fn run_ratefn(o: &Opts, regime: Regime) -> Result<Table, CliError> {
    let p = o.params()?;
    let xs = o.ladder(DEFAULT_LADDER)?;
    let mut table = Table::new(&["x", "regime", "rate", "branch"]);
    let dom = match regime {
        Regime::Large if p.d() < 0.0 => Some(domain(&p)?),
        _ => None,
    };
    for x in xs {
        let (label, value, branch) = match (regime, p.d()) {
            (_, 0.0) => return Err(CliError::Invalid("OutOfRange: d".into())),
            (Regime::Small, d) if d > 0.0 => {
                ("small", small_rate_plus(x, p.eta())?, Branch::Interior)
            }
            (Regime::Small, _) => (
                "small",
                small_rate_minus(x, p.v0(), p.d())?,
                Branch::Interior,
            ),
            (Regime::Large, d) if d > 0.0 => ("large", rate_plus_star(x, &p)?, Branch::Interior),
            (Regime::Large, _) => {
                let dm = dom.expect("domain computed for d < 0");
                let r = rate_minus_star(x, p.eta(), dm.u_minus, dm.u_plus)?;
                ("large", r.value, r.branch)
            }
        };
        table.push(vec![
            x.into(),
            label.into(),
            value.into(),
            branch_name(branch).into(),
        ]);
    }
    Ok(table)
}
