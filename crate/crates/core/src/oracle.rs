//! Independent reference computations for the test suites.
//!
//! Everything here goes through adaptive Gauss-Legendre quadrature of the
//! defining integrals and never calls the series/continued-fraction code in
//! [`crate::ergodic`]. Only compiled for tests or with the `oracle` feature.

use std::f64::consts::{LN_10, PI};

const GL_ORDER: usize = 20;
const MAX_DEPTH: u32 = 60;

/// Gauss-Legendre nodes and weights on `[-1, 1]`, by Newton iteration on
/// the Legendre recurrence.
pub fn gauss_legendre(m: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; m];
    let mut weights = vec![0.0; m];
    let mf = m as f64;
    for i in 0..m.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (mf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=m {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = mf * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[m - 1 - i] = x;
        weights[i] = w;
        weights[m - 1 - i] = w;
    }
    (nodes, weights)
}

struct Rule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl Rule {
    fn new() -> Self {
        let (nodes, weights) = gauss_legendre(GL_ORDER);
        Self { nodes, weights }
    }

    fn apply<F: Fn(f64) -> f64>(&self, f: &F, a: f64, b: f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(mid + half * x))
            .sum::<f64>()
            * half
    }
}

/// Adaptive composite Gauss-Legendre on `[a, b]` with relative tolerance
/// `rel_tol` (relative to the magnitude of the whole integral).
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> f64 {
    let rule = Rule::new();
    // coarse pass to fix the absolute tolerance
    let panels = 64;
    let width = (b - a) / panels as f64;
    let coarse: f64 = (0..panels)
        .map(|i| rule.apply(&f, a + i as f64 * width, a + (i + 1) as f64 * width))
        .sum();
    let abs_tol = rel_tol * coarse.abs().max(f64::MIN_POSITIVE);

    let mut total = 0.0;
    let mut stack = vec![(a, b, rule.apply(&f, a, b), 0u32)];
    while let Some((lo, hi, whole, depth)) = stack.pop() {
        let mid = 0.5 * (lo + hi);
        let left = rule.apply(&f, lo, mid);
        let right = rule.apply(&f, mid, hi);
        let err = (left + right - whole).abs();
        let local_tol = (abs_tol * (hi - lo) / (b - a))
            .max(4.0 * f64::EPSILON * (left.abs() + right.abs()))
            .max(1e-300);
        if err <= local_tol || depth >= MAX_DEPTH {
            total += left + right;
        } else {
            stack.push((mid, hi, right, depth + 1));
            stack.push((lo, mid, left, depth + 1));
        }
    }
    total
}

/// `E1(x)` by quadrature of its defining integral.
///
/// For `x < 1` the substitution `t = x e^u` gives `int_0^inf exp(-x e^u) du`;
/// otherwise `t = x + s` gives `e^-x int_0^inf e^-s / (x + s) ds`.
pub fn e1_quadrature(x: f64) -> f64 {
    assert!(x > 0.0);
    if x < 1.0 {
        let upper = (50.0 / x).ln();
        integrate(|u| (-x * u.exp()).exp(), 0.0, upper, 1e-15)
    } else {
        (-x).exp() * e1_scaled_quadrature(x)
    }
}

/// `e^x E1(x)` by quadrature, for `x >= 1`.
pub fn e1_scaled_quadrature(x: f64) -> f64 {
    assert!(x >= 1.0);
    integrate(|s| (-s).exp() / (x + s), 0.0, 50.0, 1e-15)
}

/// `n int_0^inf ln(1 + 10^(rho/10) g / n) e^-g dg` by quadrature.
pub fn ergodic_rate_quadrature(rho_db: f64, n: usize) -> f64 {
    let a = (LN_10 * rho_db / 10.0).exp() / n as f64;
    let inner = integrate(|g| (a * g).ln_1p() * (-g).exp(), 0.0, 60.0, 1e-14);
    n as f64 * inner
}

/// `z ((1+z) e^z E1(z) - 1)` with `E1` from quadrature.
pub fn ergodic_bend_profile(z: f64) -> f64 {
    let scaled = if z < 1.0 {
        z.exp() * e1_quadrature(z)
    } else {
        e1_scaled_quadrature(z)
    };
    z * ((1.0 + z) * scaled - 1.0)
}

/// Grid search for the maximizer `z*` of [`ergodic_bend_profile`] over
/// `z in (0, 3)`: a uniform grid, then repeated 10x refinement around the
/// best point.
pub fn grid_search_z_star() -> f64 {
    let (mut lo, mut hi) = (1e-3, 3.0);
    let mut best = lo;
    for _ in 0..6 {
        let steps = 200;
        let h = (hi - lo) / steps as f64;
        let mut best_val = f64::NEG_INFINITY;
        for i in 0..=steps {
            let z = lo + i as f64 * h;
            let v = ergodic_bend_profile(z);
            if v > best_val {
                best_val = v;
                best = z;
            }
        }
        lo = (best - 2.0 * h).max(1e-6);
        hi = best + 2.0 * h;
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_rule_is_exact_for_polynomials() {
        let (x, w) = gauss_legendre(GL_ORDER);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        // int_{-1}^{1} x^38 dx = 2/39
        let v: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(38)).sum();
        assert!((v - 2.0 / 39.0).abs() < 1e-14);
    }

    #[test]
    fn adaptive_handles_peaked_integrand() {
        // int_0^1 1/(1e-4 + x) dx = ln((1 + 1e-4)/1e-4)
        let v = integrate(|x| 1.0 / (1e-4 + x), 0.0, 1.0, 1e-14);
        let exact = ((1.0 + 1e-4) / 1e-4f64).ln();
        assert!((v - exact).abs() / exact < 1e-13);
    }

    #[test]
    fn e1_quadrature_reference() {
        // 25-digit references
        assert!((e1_quadrature(1.0) - 0.219_383_934_395_520_27).abs() < 1e-15);
        assert!((e1_quadrature(1e-8) - 17.843_465_089_050_833).abs() / 17.84 < 1e-14);
        assert!((e1_quadrature(10.0) - 4.156_968_929_685_324e-6).abs() / 4.157e-6 < 1e-14);
    }
}
