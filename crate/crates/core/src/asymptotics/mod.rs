//! Large-deviation rate functions, a numeric Legendre transform and the
//! asymptotic smiles and option prices they imply.
//!
//! Two regimes:
//! - small maturity, speed `t^{-(1+d)}` for `d < 0` (rate `lambda_minus*`)
//!   and `t^{-1}` for `d > 0` (rate `lambda_plus*`);
//! - large maturity, speed `t^{1+d/2}` for `d > 0` (rate `Lambda_plus*`)
//!   and `t` for `d < 0` (rate `Lambda_minus*`).

mod legendre;
mod rates;
mod smile;

pub use legendre::fenchel_legendre;
pub use rates::{
    lambda_minus, lambda_plus, large_time_cgf_limit_plus, rate_minus_star, rate_plus_star,
    small_rate_minus, small_rate_plus, u_of_x, Branch, RateFunctionEval,
};
pub use smile::{
    option_asymptote, option_asymptote_large_time, smile_large_time, smile_small_time,
    AsymptoticSmile, DSign, LargeTimeRate, OptionPosition, Regime,
};
