//! One-dimensional numerical helpers: golden-section search, central
//! differences and SNR grids.

use crate::{Error, Result};

/// Default step for central differences, in dB.
pub const FD_STEP_DB: f64 = 1e-3;

/// `1 / phi` where `phi` is the golden ratio.
const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section search for the maximizer of a unimodal `f` on `[lo, hi]`.
///
/// Iterates until the bracket is narrower than `tol` and returns its midpoint.
pub fn golden_section_max<F>(f: F, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(hi - lo > 0.0) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::DegenerateBracket { lo, hi });
    }
    let tol = tol.max(f64::EPSILON * lo.abs().max(hi.abs()));
    let (mut a, mut b) = (lo, hi);
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while b - a > tol {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        }
    }
    Ok(0.5 * (a + b))
}

/// Central first difference `(f(x+h) - f(x-h)) / 2h`.
pub fn central_diff<F>(f: F, x: f64, h: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// Central second difference `(f(x+h) - 2f(x) + f(x-h)) / h^2`.
pub fn central_diff2<F>(f: F, x: f64, h: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)
}

/// Uniform grid `rho_min + i * step` for `i = 0, 1, ...` up to `rho_max`.
///
/// `rho_max` is included when it lies on the grid (up to a 1e-9 step slack).
pub fn snr_grid(rho_min: f64, rho_max: f64, step: f64) -> Result<Vec<f64>> {
    let bad = Error::InvalidGrid {
        min: rho_min,
        max: rho_max,
        step,
    };
    if !(rho_min.is_finite() && rho_max.is_finite() && step.is_finite()) {
        return Err(bad);
    }
    if !(step > 0.0) || !(rho_min < rho_max) {
        return Err(bad);
    }
    let count = ((rho_max - rho_min) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| rho_min + i as f64 * step).collect())
}
