use crate::{Error, Result};

const BRACKET_FLOOR: f64 = 1e-10;
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// `sup_{l in [a, b]} (l x - f(l))` for convex `f`, by golden-section search
/// on the concave objective. Endpoints are admissible.
///
/// The bracket shrinks to `max(1e-3 tol, 1e-10)`. A midpoint convexity probe
/// on five points reports [`Error::NonConvexDetected`].
pub fn fenchel_legendre<F>(mut f: F, a: f64, b: f64, x: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::OutOfRange("interval"));
    }
    if !(tol > 0.0) {
        return Err(Error::OutOfRange("tol"));
    }
    let mut eval = |l: f64| -> Result<f64> {
        let v = f(l);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite("limit_cgf"))
        }
    };

    let probe: [f64; 5] = core::array::from_fn(|i| a + (b - a) * i as f64 / 4.0);
    let mut fp = [0.0; 5];
    for (v, &l) in fp.iter_mut().zip(&probe) {
        *v = eval(l)?;
    }
    for (i, j, k) in [(0, 2, 4), (0, 1, 2), (2, 3, 4), (1, 2, 3)] {
        let scale = fp[i].abs().max(fp[k].abs()).max(1.0);
        if fp[j] > 0.5 * (fp[i] + fp[k]) + 1e-12 * scale {
            return Err(Error::NonConvexDetected);
        }
    }

    let g = |l: f64, v: f64| l * x - v;
    let floor = (1e-3 * tol).max(BRACKET_FLOOR);
    let (mut lo, mut hi) = (a, b);
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let mut gc = g(c, eval(c)?);
    let mut gd = g(d, eval(d)?);
    while hi - lo > floor {
        if gc >= gd {
            hi = d;
            d = c;
            gd = gc;
            c = hi - INV_PHI * (hi - lo);
            gc = g(c, eval(c)?);
        } else {
            lo = c;
            c = d;
            gc = gd;
            d = lo + INV_PHI * (hi - lo);
            gd = g(d, eval(d)?);
        }
    }
    let ends = [g(a, fp[0]), g(b, fp[4])];
    Ok(gc.max(gd).max(ends[0]).max(ends[1]))
}
