use fheston_core::asymptotics::{lambda_plus, rate_plus_star};
use fheston_core::cgf::{cgf_real, mean_vd};
use fheston_core::pricing::{
    bs_call_price, bs_put_price, bs_vega, fourier_call_price, implied_vol, FourierConfig,
    OptionKind, OptionQuote,
};
use fheston_core::simulation::{integrated_frac_variance, path_rng, simulate_cir_path, Scheme};
use fheston_core::special::{gamma, std_normal_cdf};
use fheston_core::{ModelParams, TimeGrid};
use proptest::prelude::*;

fn model() -> impl Strategy<Value = ModelParams> {
    (
        0.0..3.0f64,
        0.01..0.1f64,
        0.05..1.0f64,
        0.01..0.1f64,
        0.0..0.05f64,
        -0.45..0.45f64,
    )
        .prop_map(|(k, th, xi, v0, eta, d)| ModelParams::new(k, th, xi, v0, eta, d).unwrap())
}

/// Parameters with `kappa theta > 0` and `d > 0`, where the large-time rate is defined.
fn positive_model() -> impl Strategy<Value = ModelParams> {
    (0.2..3.0f64, 0.01..0.1f64, 0.05..1.0f64, 0.01..0.45f64)
        .prop_map(|(k, th, xi, d)| ModelParams::new(k, th, xi, 0.04, 0.0, d).unwrap())
}

proptest! {
    #[test]
    fn normal_cdf_symmetric_and_monotone(z in -8.0..8.0f64, h in 1e-3..1.0f64) {
        prop_assert!((std_normal_cdf(z) + std_normal_cdf(-z) - 1.0).abs() < 1e-15);
        prop_assert!(std_normal_cdf(z + h) >= std_normal_cdf(z));
    }

    #[test]
    fn gamma_recurrence(x in 0.05..6.0f64) {
        let lhs = gamma(x + 1.0).unwrap();
        let rhs = x * gamma(x).unwrap();
        prop_assert!((lhs / rhs - 1.0).abs() < 1e-13);
    }

    #[test]
    fn black_scholes_bounds_parity_and_vega(x in -1.0..1.0f64, t in 0.01..5.0f64, sigma in 0.01..1.5f64) {
        let call = bs_call_price(x, t, sigma);
        let put = bs_put_price(x, t, sigma);
        prop_assert!(call >= (1.0 - x.exp()).max(0.0) - 1e-15 && call <= 1.0);
        prop_assert!(put >= (x.exp() - 1.0).max(0.0) - 1e-15 && put <= x.exp());
        prop_assert!((call - put - (1.0 - x.exp())).abs() < 1e-14);
        let sd = sigma * t.sqrt();
        prop_assert!(bs_vega(x, sd) >= 0.0);
        // the density underflows past ~38 standard deviations
        if x.abs() / sd < 30.0 {
            prop_assert!(bs_vega(x, sd) > 0.0);
        }
    }

    #[test]
    fn implied_vol_round_trip(x in -0.3..0.3f64, t in 0.1..3.0f64, sigma in 0.05..0.8f64) {
        // far out of the money the price carries too few digits to invert
        prop_assume!(x.abs() / (sigma * t.sqrt()) < 6.0);
        let kind = if x >= 0.0 { OptionKind::Call } else { OptionKind::Put };
        let price = if x >= 0.0 { bs_call_price(x, t, sigma) } else { bs_put_price(x, t, sigma) };
        let quote = OptionQuote::new(x, t, price).unwrap();
        let vol = implied_vol(&quote, kind).unwrap();
        prop_assert!((vol - sigma).abs() < 1e-8, "{vol} vs {sigma}");
    }

    #[test]
    fn young_inequality(p in positive_model(), x in -1.0..1.0f64, u in 0.0..=1.0f64) {
        let dual = rate_plus_star(x, &p).unwrap();
        prop_assert!(u * x - lambda_plus(u, &p).unwrap() <= dual + 1e-14);
        prop_assert!(dual >= x.max(0.0));
    }

    #[test]
    fn rate_function_convex(p in positive_model(), a in -1.0..1.0f64, b in -1.0..1.0f64) {
        let f = |x: f64| rate_plus_star(x, &p).unwrap();
        prop_assert!(f(0.5 * (a + b)) <= 0.5 * (f(a) + f(b)) + 1e-14);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn martingale_identity(p in model(), t in 0.05..5.0f64) {
        prop_assert!(cgf_real(&p, 1.0, t, 1e-10).unwrap().abs() <= 1e-8);
        prop_assert_eq!(cgf_real(&p, 0.0, t, 1e-10).unwrap(), 0.0);
    }

    #[test]
    fn cgf_convex_and_nonpositive_on_unit_interval(p in model(), t in 0.05..3.0f64, u in 0.05..0.95f64) {
        let m = |u: f64| cgf_real(&p, u, t, 1e-10).unwrap();
        let h = 0.04f64.min(u).min(1.0 - u);
        prop_assert!(m(u) <= 1e-12);
        prop_assert!(m(u) <= 0.5 * (m(u - h) + m(u + h)) + 1e-10);
    }

    #[test]
    fn integrated_variance_dominates_eta_t(p in model(), t in 0.1..2.0f64, seed in any::<u64>()) {
        let grid = TimeGrid::uniform(t, 64).unwrap();
        let path = simulate_cir_path(&p, &grid, Scheme::FullTruncation, &mut path_rng(seed, 0));
        let iv = integrated_frac_variance(&path, p.d(), p.eta(), t).unwrap();
        prop_assert!(iv >= p.eta() * t);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn fourier_call_decreasing_and_convex_in_strike(p in model(), t in 0.2..2.0f64, x in -0.3..0.3f64) {
        let cfg = FourierConfig::default();
        let h = 0.05;
        let c = |x: f64| fourier_call_price(&p, x, t, &cfg).unwrap();
        let (lo, mid, hi) = (c(x - h), c(x), c(x + h));
        prop_assert!(lo >= mid && mid >= hi);
        // convex as a function of the strike k = e^x
        let (k0, k1, k2) = ((x - h).exp(), x.exp(), (x + h).exp());
        let slope_left = (mid - lo) / (k1 - k0);
        let slope_right = (hi - mid) / (k2 - k1);
        prop_assert!(slope_right >= slope_left - 1e-8);
        prop_assert!(slope_left >= -1.0 - 1e-8 && slope_right <= 1e-8);
    }
}

#[test]
fn mean_of_fractional_variance_is_positive() {
    let p = ModelParams::new(1.0, 0.04, 0.2, 0.04, 0.01, 0.2).unwrap();
    for t in [0.1, 1.0, 5.0] {
        assert!(mean_vd(&p, t).unwrap() > p.eta());
    }
}
