//! Adaptive Gauss-Kronrod (7, 15) quadrature.

use alloc::vec::Vec;

use crate::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Integral, absolute-value integral and error estimate over one panel.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Estimate {
    pub value: f64,
    pub abs: f64,
    pub error: f64,
}

fn gk15<F>(f: &mut F, a: f64, b: f64) -> Result<Estimate>
where
    F: FnMut(f64) -> Result<f64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center)?;
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs = fc.abs() * WGK[7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx)?;
        let f2 = f(center + dx)?;
        kronrod += WGK[j] * (f1 + f2);
        abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    Ok(Estimate {
        value: kronrod * half,
        abs: abs * half.abs(),
        error: ((kronrod - gauss) * half).abs(),
    })
}

/// Integrate `f` on `[a, b]` to absolute accuracy `tol` by bisecting the
/// worst panel. Panels are summed in left-to-right order.
pub(crate) fn integrate<F>(
    f: &mut F,
    a: f64,
    b: f64,
    tol: f64,
    max_panels: usize,
) -> Result<Estimate>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut panels: Vec<(f64, f64, Estimate)> = Vec::new();
    panels.push((a, b, gk15(f, a, b)?));
    loop {
        let total_err: f64 = panels.iter().map(|p| p.2.error).sum();
        if total_err <= tol {
            break;
        }
        if panels.len() >= max_panels {
            return Err(Error::QuadratureFailure("panel limit"));
        }
        let (worst, _) = panels.iter().enumerate().fold((0, -1.0), |acc, (i, p)| {
            if p.2.error > acc.1 {
                (i, p.2.error)
            } else {
                acc
            }
        });
        let (lo, hi, _) = panels[worst];
        let mid = 0.5 * (lo + hi);
        let left = gk15(f, lo, mid)?;
        let right = gk15(f, mid, hi)?;
        panels[worst] = (lo, mid, left);
        panels.insert(worst + 1, (mid, hi, right));
    }
    let mut out = Estimate::default();
    for (_, _, e) in &panels {
        out.value += e.value;
        out.abs += e.abs;
        out.error += e.error;
    }
    Ok(out)
}
