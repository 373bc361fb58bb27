//! Special functions shared by every module.
//!
//! Only positive Gamma arguments occur in the model (`1 + d`, `2 + d`, ...
//! with `d >= -1/2`), so no reflection is attempted. Both functions are
//! thin wrappers over the musl-derived routines in `libm`.

use crate::{Error, Result};

/// Gamma function for `x > 0`.
pub fn gamma(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::OutOfRange("x"));
    }
    Ok(libm::tgamma(x))
}

/// `1 / Gamma(x)` extended by zero at the non-positive integers that can
/// appear as `Gamma(d)` with `d = 0`.
pub(crate) fn rgamma(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else if x > 0.0 {
        1.0 / libm::tgamma(x)
    } else {
        // Gamma(x) = Gamma(x + 1) / x for x in (-1, 0).
        x / libm::tgamma(x + 1.0)
    }
}

/// Gamma for arguments known to be positive; callers guarantee the domain.
pub(crate) fn gamma_pos(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    libm::tgamma(x)
}

/// Natural log of `Gamma(x)` for `x > 0`.
pub(crate) fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// Standard normal cumulative distribution function.
pub fn std_normal_cdf(z: f64) -> f64 {
    0.5 * libm::erfc(-z * core::f64::consts::FRAC_1_SQRT_2)
}

/// Standard normal density.
pub fn std_normal_pdf(z: f64) -> f64 {
    const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;
    INV_SQRT_2PI * libm::exp(-0.5 * z * z)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Reference values from a 40-digit arbitrary-precision evaluation.
    const GAMMA_1_8: f64 = 0.931_383_770_980_242_7;
    const NCDF_1_96: f64 = 0.975_002_104_851_779_6;

    #[test]
    fn gamma_known_values() {
        assert_eq!(gamma(1.0).unwrap(), 1.0);
        let sqrt_pi = libm::sqrt(core::f64::consts::PI);
        assert!((gamma(0.5).unwrap() / sqrt_pi - 1.0).abs() < 1e-14);
        assert!((gamma(1.8).unwrap() / GAMMA_1_8 - 1.0).abs() < 1e-12);
        assert!((gamma(0.51).unwrap() / 1.738_415_068_463_864 - 1.0).abs() < 1e-12);
        assert!((gamma(2.5).unwrap() / 1.329_340_388_179_137 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gamma_rejects_non_positive() {
        assert_eq!(gamma(0.0), Err(Error::OutOfRange("x")));
        assert_eq!(gamma(-1.5), Err(Error::OutOfRange("x")));
        assert!(gamma(f64::NAN).is_err());
    }

    #[test]
    fn gamma_recurrence_on_grid() {
        let mut x = 0.51;
        while x <= 3.0 {
            let lhs = gamma(x + 1.0).unwrap();
            let rhs = x * gamma(x).unwrap();
            assert!((lhs / rhs - 1.0).abs() < 1e-12, "x = {x}");
            x += 0.09;
        }
    }

    #[test]
    fn rgamma_matches_reciprocal_and_vanishes_at_zero() {
        assert_eq!(rgamma(0.0), 0.0);
        for &x in &[-0.4, -0.1, 0.2, 0.45] {
            let g = if x > 0.0 {
                libm::tgamma(x)
            } else {
                libm::tgamma(x + 1.0) / x
            };
            assert!((rgamma(x) * g - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn normal_cdf_values() {
        assert_eq!(std_normal_cdf(0.0), 0.5);
        assert!((std_normal_cdf(1.96) - NCDF_1_96).abs() <= 1e-14);
        for i in 0..80 {
            let z = -8.0 + 0.2 * i as f64;
            assert!((std_normal_cdf(z) + std_normal_cdf(-z) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn normal_cdf_nondecreasing() {
        let mut prev = 0.0;
        for i in 0..=4000 {
            let z = -20.0 + 0.01 * i as f64;
            let c = std_normal_cdf(z);
            assert!(c >= prev);
            prev = c;
        }
    }
}
