//! Command-line and config-file options.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fheston_core::{ModelParams, RawParams};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "fheston",
    version,
    about = "Fractional Heston pricing, smiles and asymptotics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Call,
    Put,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Regime {
    Small,
    Large,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    Call,
    MeanVd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    FullTruncation,
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Smalltime,
    Largetime,
    Bounds,
    Oracle,
    Mc,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// m(u, w, t) from the Riccati solver. Columns: u,w,t,value,status
    Cgf,
    /// Fourier option price and its implied volatility. Columns: x,t,price,implied_vol
    Price {
        #[arg(long, value_enum, default_value = "call")]
        kind: Kind,
    },
    /// Fourier smile on a strike ladder plus its asymptotic counterpart.
    /// Columns: x,t,implied_vol,source
    Smile {
        #[arg(long, value_enum, default_value = "small")]
        regime: Regime,
    },
    /// Large-maturity exponents of option prices. Columns: x,put,call,covered_call
    Asymptote,
    /// Monte Carlo estimate with its analytic reference.
    /// Columns: quantity,x,t,mean,std_error,n_paths,seed,reference
    Simulate {
        #[arg(long, value_enum, default_value = "call")]
        quantity: Quantity,
        #[arg(long, value_enum, default_value = "full-truncation")]
        scheme: SchemeArg,
    },
    /// Rate functions on a ladder. Columns: x,regime,rate,branch
    Ratefn {
        #[arg(long, value_enum, default_value = "small")]
        regime: Regime,
    },
    /// Run a verification suite. Columns: name,expected,observed,gap,tolerance,pass
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
    },
}

/// Options shared by all verbs. Every field may also come from the JSON
/// file given by `--config`; flags take precedence.
#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct Opts {
    /// JSON file with any of the option names below as keys
    #[arg(long, global = true)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    #[serde(skip)]
    pub format: Option<Format>,

    #[arg(long, global = true, allow_hyphen_values = true)]
    pub kappa: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub theta: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub xi: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub v0: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub eta: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub d: Option<f64>,

    #[arg(long, global = true, allow_hyphen_values = true)]
    pub u: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub w: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub x: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub t: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub x_min: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub x_max: Option<f64>,
    #[arg(long, global = true)]
    pub x_steps: Option<usize>,

    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub paths: Option<usize>,
    /// Steps per unit time
    #[arg(long, global = true)]
    pub steps: Option<usize>,
    #[arg(long, global = true)]
    pub damping: Option<f64>,
    #[arg(long, global = true)]
    pub tol: Option<f64>,
}

macro_rules! overlay {
    ($hi:expr, $lo:expr; $($f:ident),*) => {
        Opts { config: $hi.config.clone(), format: $hi.format, $($f: $hi.$f.or($lo.$f)),* }
    };
}

impl Opts {
    /// Fill unset fields from the `--config` file, if any.
    pub fn resolve(&self) -> Result<Opts, CliError> {
        let Some(path) = &self.config else {
            return Ok(self.clone());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Invalid(format!("Config: {}: {e}", path.display())))?;
        let file: Opts =
            serde_json::from_str(&text).map_err(|e| CliError::Invalid(format!("Config: {e}")))?;
        Ok(self.overlay(&file))
    }

    /// `self` where set, otherwise `other`.
    pub fn overlay(&self, other: &Opts) -> Opts {
        overlay!(self, other; kappa, theta, xi, v0, eta, d, u, w, x, t, x_min, x_max, x_steps,
            seed, paths, steps, damping, tol)
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or(Format::Csv)
    }

    /// Model parameters; all six must be present.
    pub fn params(&self) -> Result<ModelParams, CliError> {
        let need = |v: Option<f64>, name: &str| {
            v.ok_or_else(|| CliError::Invalid(format!("Missing: {name}")))
        };
        let raw = RawParams {
            kappa: need(self.kappa, "kappa")?,
            theta: need(self.theta, "theta")?,
            xi: need(self.xi, "xi")?,
            v0: need(self.v0, "v0")?,
            eta: need(self.eta, "eta")?,
            d: need(self.d, "d")?,
        };
        Ok(raw.validate()?)
    }

    /// Model parameters starting from `base`, replaced field by field by
    /// whatever was supplied.
    pub fn params_over(&self, base: RawParams) -> Result<ModelParams, CliError> {
        let raw = RawParams {
            kappa: self.kappa.unwrap_or(base.kappa),
            theta: self.theta.unwrap_or(base.theta),
            xi: self.xi.unwrap_or(base.xi),
            v0: self.v0.unwrap_or(base.v0),
            eta: self.eta.unwrap_or(base.eta),
            d: self.d.unwrap_or(base.d),
        };
        Ok(raw.validate()?)
    }

    pub fn require(&self, v: Option<f64>, name: &str) -> Result<f64, CliError> {
        let v = v.ok_or_else(|| CliError::Invalid(format!("Missing: {name}")))?;
        if !v.is_finite() {
            return Err(CliError::Invalid(format!("NonFinite: {name}")));
        }
        Ok(v)
    }

    /// `--x` alone, or the ladder `--x-min .. --x-max` in `--x-steps` points.
    pub fn ladder(&self, default: (f64, f64, usize)) -> Result<Vec<f64>, CliError> {
        if let (Some(x), None, None) = (self.x, self.x_min, self.x_max) {
            return Ok(vec![x]);
        }
        let lo = self.x_min.unwrap_or(default.0);
        let hi = self.x_max.unwrap_or(default.1);
        let n = self.x_steps.unwrap_or(default.2);
        if n == 0 || !(lo <= hi) {
            return Err(CliError::Invalid("OutOfRange: x-steps".into()));
        }
        if n == 1 {
            return Ok(vec![lo]);
        }
        Ok((0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect())
    }
}
