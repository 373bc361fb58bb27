//! Uncorrelated fractional Heston model.
//!
//! The log-price `X` is driven by the fractional variance
//! `V^d = eta + I^d V`, where `V` is a CIR process and `I^d` the left
//! Riemann-Liouville integral of order `d` in `[-1/2, 1/2]`. Because the
//! two driving Brownian motions are independent, the joint cumulant
//! generating function of `(X_t, V^d_t)` is affine and reduces to a
//! Riccati equation with a time-dependent (possibly singular) forcing.
//!
//! Modules:
//! - [`model`]: parameters, validation, time grids.
//! - [`special`]: Gamma function and the standard normal CDF.
//! - [`cgf`]: Riccati solver, cumulant generating function, closed-form
//!   and series oracles, comparison bounds, moment domain, `E[V^d_t]`.
//! - [`asymptotics`]: rate functions, numeric Legendre transform and
//!   asymptotic smiles.
//! - [`pricing`]: Black-Scholes, implied volatility, Fourier pricing.
//! - [`simulation`]: CIR paths, product integration of the fractional
//!   kernel and conditional (mixing) Monte Carlo.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]
// `!(a < b)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod asymptotics;
pub mod cgf;
mod error;
pub mod model;
pub mod pricing;
mod quadrature;
pub mod simulation;
pub mod special;

pub use error::Error;
pub use model::{ModelParams, RawParams, TimeGrid};
pub use num_complex::Complex64;

pub type Result<T, E = Error> = core::result::Result<T, E>;
