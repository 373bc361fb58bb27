use crate::model::ModelParams;
use crate::special::gamma_pos;
use crate::{Error, Result};

/// `K = kappa theta / (xi sqrt(Gamma(1+d)))`, the scale of `Lambda_plus`.
fn plus_scale(p: &ModelParams) -> Result<f64> {
    if p.xi() == 0.0 {
        return Err(Error::OutOfRange("xi"));
    }
    Ok(p.kappa() * p.theta() / (p.xi() * libm::sqrt(gamma_pos(1.0 + p.d()))))
}

fn require_positive_d(p: &ModelParams) -> Result<()> {
    p.require_open_d()?;
    if !(p.d() > 0.0) {
        return Err(Error::OutOfRange("d"));
    }
    Ok(())
}

/// `Lambda_plus(u) = -(kappa theta / xi) sqrt(u(1-u) / Gamma(1+d))` on `[0, 1]`.
pub fn lambda_plus(u: f64, p: &ModelParams) -> Result<f64> {
    if !(0.0..=1.0).contains(&u) {
        return Err(Error::OutOfRange("u"));
    }
    Ok(-plus_scale(p)? * libm::sqrt(u * (1.0 - u)))
}

/// `lim t^{-(1+d/2)} m(u, t)` for `d > 0`, `u` in `[0, 1]`.
///
/// For large `s` the Riccati solution tracks its positive root
/// `B(s) ~ (1/xi) sqrt(u(1-u) s^d / Gamma(1+d))`, and `A = -kappa theta int B`
/// integrates `s^{d/2}` into `t^{1+d/2} / (1 + d/2)`. The limit is therefore
/// [`lambda_plus`] divided by `1 + d/2`.
pub fn large_time_cgf_limit_plus(u: f64, p: &ModelParams) -> Result<f64> {
    Ok(lambda_plus(u, p)? / (1.0 + 0.5 * p.d()))
}

/// `Lambda_minus(u) = u(u-1) eta / 2`.
pub fn lambda_minus(u: f64, eta: f64) -> f64 {
    0.5 * u * (u - 1.0) * eta
}

/// Maximiser of `u x - Lambda_plus(u)` over `[0, 1]`:
/// `u(x) = (1 + r / sqrt(1 + r^2)) / 2` with `r = x / K`.
///
/// Increasing and concave on `x > 0`, with `u(0) = 1/2`.
pub fn u_of_x(x: f64, p: &ModelParams) -> Result<f64> {
    require_positive_d(p)?;
    let k = plus_scale(p)?;
    if k == 0.0 {
        return Err(Error::OutOfRange("kappa*theta"));
    }
    let r = x / k;
    let s = if r.abs() > 1e150 {
        r.signum()
    } else {
        r / libm::sqrt(1.0 + r * r)
    };
    Ok(0.5 * (1.0 + s))
}

/// `Lambda_plus*(x) = u(x) x + K sqrt(u(x)(1 - u(x)))`, which simplifies to
/// `(x + sqrt(x^2 + K^2)) / 2`. The left tail uses the cancellation-free
/// form `K^2 / (2 (sqrt(x^2 + K^2) - x))`.
pub fn rate_plus_star(x: f64, p: &ModelParams) -> Result<f64> {
    require_positive_d(p)?;
    let k = plus_scale(p)?;
    if k == 0.0 {
        return Err(Error::OutOfRange("kappa*theta"));
    }
    let h = libm::hypot(x, k);
    Ok(if x >= 0.0 {
        0.5 * (x + h)
    } else {
        0.5 * k * k / (h - x)
    })
}

/// `lambda_plus*(x) = x^2 / (2 eta)`.
pub fn small_rate_plus(x: f64, eta: f64) -> Result<f64> {
    if !(eta > 0.0) {
        return Err(Error::OutOfRange("eta"));
    }
    Ok(x * x / (2.0 * eta))
}

/// `lambda_minus*(x) = Gamma(2+d) x^2 / (2 v0)`.
pub fn small_rate_minus(x: f64, v0: f64, d: f64) -> Result<f64> {
    if !(v0 > 0.0) {
        return Err(Error::OutOfRange("v0"));
    }
    if !(-0.5..=0.5).contains(&d) {
        return Err(Error::OutOfRange("d"));
    }
    Ok(gamma_pos(2.0 + d) * x * x / (2.0 * v0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Interior,
    LinearLeft,
    LinearRight,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateFunctionEval {
    pub x: f64,
    pub value: f64,
    pub branch: Branch,
}

/// `Lambda_minus*`: the parabola `(x + eta/2)^2 / (2 eta)` on
/// `[(u_- - 1/2) eta, (u_+ - 1/2) eta]`, continued by the tangent lines
/// `u_(+/-) x - Lambda_minus(u_(+/-))` outside.
pub fn rate_minus_star(x: f64, eta: f64, u_minus: f64, u_plus: f64) -> Result<RateFunctionEval> {
    if !(eta > 0.0) {
        return Err(Error::OutOfRange("eta"));
    }
    if !(u_minus <= 0.0) {
        return Err(Error::OutOfRange("u_minus"));
    }
    if !(u_plus >= 1.0) {
        return Err(Error::OutOfRange("u_plus"));
    }
    let left = (u_minus - 0.5) * eta;
    let right = (u_plus - 0.5) * eta;
    let (value, branch) = if x < left {
        (u_minus * x - lambda_minus(u_minus, eta), Branch::LinearLeft)
    } else if x > right {
        (u_plus * x - lambda_minus(u_plus, eta), Branch::LinearRight)
    } else {
        let y = x + 0.5 * eta;
        (y * y / (2.0 * eta), Branch::Interior)
    };
    Ok(RateFunctionEval { x, value, branch })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> ModelParams {
        ModelParams::new(1.0, 0.04, 0.2, 0.04, 0.0, 0.2).unwrap()
    }

    #[test]
    fn u_of_x_shape() {
        let p = params();
        assert_eq!(u_of_x(0.0, &p).unwrap(), 0.5);
        assert!(u_of_x(1e6, &p).unwrap() > 1.0 - 1e-9);
        assert!(u_of_x(-1e6, &p).unwrap() < 1e-9);
        let mut prev = 0.5;
        for i in 1..=20 {
            let u = u_of_x(0.1 * i as f64, &p).unwrap();
            assert!(u > prev && u < 1.0);
            prev = u;
        }
        let q = p.with(|r| r.theta = 0.0).unwrap();
        assert!(u_of_x(0.1, &q).is_err());
    }

    #[test]
    fn lambda_plus_values() {
        let p = params();
        assert_eq!(lambda_plus(0.0, &p).unwrap(), 0.0);
        assert_eq!(lambda_plus(1.0, &p).unwrap(), 0.0);
        let expect = -0.04 / (2.0 * 0.2 * libm::sqrt(libm::tgamma(1.2)));
        assert!((lambda_plus(0.5, &p).unwrap() - expect).abs() < 1e-16);
        assert!(lambda_plus(1.1, &p).is_err());
        let scaled = large_time_cgf_limit_plus(0.5, &p).unwrap();
        assert!((scaled * 1.1 - expect).abs() < 1e-16);
    }

    #[test]
    fn lambda_minus_values() {
        assert_eq!(lambda_minus(0.0, 0.04), 0.0);
        assert_eq!(lambda_minus(1.0, 0.04), 0.0);
        assert_eq!(lambda_minus(0.5, 0.04), -0.04 / 8.0);
    }

    #[test]
    fn rate_plus_star_matches_its_definition() {
        let p = params();
        let k = 0.04 / (0.2 * libm::sqrt(libm::tgamma(1.2)));
        assert!((rate_plus_star(0.0, &p).unwrap() - 0.5 * k).abs() < 1e-16);
        for i in -20..=20 {
            let x = 0.05 * i as f64;
            let u = u_of_x(x, &p).unwrap();
            let direct = u * x + k * libm::sqrt(u * (1.0 - u));
            assert!((rate_plus_star(x, &p).unwrap() - direct).abs() < 1e-14);
            let h = 1e-6;
            let slope = (rate_plus_star(x + h, &p).unwrap() - rate_plus_star(x - h, &p).unwrap())
                / (2.0 * h);
            assert!((slope - u).abs() < 1e-6);
        }
    }

    #[test]
    fn rate_minus_star_branches() {
        let (eta, um, up) = (0.04, -1.5, 2.5);
        let at = rate_minus_star(-eta / 2.0, eta, um, up).unwrap();
        assert_eq!((at.value, at.branch), (0.0, Branch::Interior));
        let right = (up - 0.5) * eta;
        let inner = rate_minus_star(right, eta, um, up).unwrap();
        let outer = up * right - lambda_minus(up, eta);
        assert_eq!(inner.branch, Branch::Interior);
        assert!((inner.value - outer).abs() < 1e-15);
        let far = rate_minus_star(right + 1.0, eta, um, up).unwrap();
        assert_eq!(far.branch, Branch::LinearRight);
        assert_eq!(far.value, up * (right + 1.0) - lambda_minus(up, eta));
        assert_eq!(
            rate_minus_star(-10.0, eta, um, up).unwrap().branch,
            Branch::LinearLeft
        );
        assert!(rate_minus_star(0.0, 0.0, um, up).is_err());
    }

    #[test]
    fn small_time_rates() {
        assert_eq!(small_rate_plus(0.0, 0.04).unwrap(), 0.0);
        assert_eq!(small_rate_minus(0.0, 0.04, -0.2).unwrap(), 0.0);
        let v = small_rate_minus(1.0, 0.04, -0.2).unwrap();
        assert!((v - libm::tgamma(1.8) / 0.08).abs() < 1e-14);
        assert!(small_rate_plus(1.0, 0.0).is_err());
        assert!(small_rate_minus(1.0, 0.0, 0.1).is_err());
    }
}
