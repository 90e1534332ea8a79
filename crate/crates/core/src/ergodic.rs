//! Exponential integral `E1` and the ergodic sum-rate of ZF precoding in
//! Rayleigh fading,
//!
//! ```text
//! R_E(rho) = n e^z E1(z),   z = n 10^(-rho/10)
//! ```
//!
//! which is `n E[ln(1 + 10^(rho/10) g / n)]` for `g ~ Exp(1)`.

use std::f64::consts::LN_10;

use crate::numerics::golden_section_max;
use crate::rate::{check_n, RateNats, SnrDb, DB_SLOPE};
use crate::{Error, Result};

/// Euler-Mascheroni constant.
#[allow(clippy::excessive_precision)]
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_61;

/// Tolerance of [`ergodic_bend_numeric`], in dB.
pub const ERGODIC_BEND_TOL_DB: f64 = 1e-4;

/// Half-width of the bracket around the ergodic intercept searched by
/// [`ergodic_bend_numeric`], in dB.
const ERGODIC_BRACKET_DB: f64 = 20.0;

/// Series / continued fraction switch point.
const E1_SWITCH: f64 = 1.0;

const MAX_ITER: usize = 10_000;

/// `E1(x) = -gamma - ln x + sum_{k>=1} (-1)^(k+1) x^k / (k k!)` for `0 < x <= 1`.
fn e1_series(x: f64) -> f64 {
    let mut sum = 0.0;
    let mut term = 1.0; // x^k / k!
    for k in 1..MAX_ITER {
        let kf = k as f64;
        term *= x / kf;
        let add = term / kf;
        if k % 2 == 1 {
            sum += add;
        } else {
            sum -= add;
        }
        if add < f64::EPSILON * 0.25 * sum.abs() {
            break;
        }
    }
    -EULER_GAMMA - x.ln() + sum
}

/// `e^x E1(x)` for `x > 1` by the continued fraction
/// `1/(x+1- 1/(x+3- 4/(x+5- ...)))`, evaluated with the modified Lentz method.
fn e1_scaled_cf(x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut b = x + 1.0;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..MAX_ITER {
        let an = -((i * i) as f64);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() <= f64::EPSILON {
            break;
        }
    }
    h
}

fn check_e1_arg(x: f64) -> Result<()> {
    if x > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidE1Argument(x))
    }
}

/// Exponential integral `E1(x) = int_x^inf e^-t / t dt` for `x > 0`.
pub fn exp_integral_e1(x: f64) -> Result<f64> {
    check_e1_arg(x)?;
    if x <= E1_SWITCH {
        Ok(e1_series(x))
    } else if x.is_infinite() {
        Ok(0.0)
    } else {
        Ok((-x).exp() * e1_scaled_cf(x))
    }
}

/// `e^x E1(x)`, finite for every `x > 0` (behaves like `1/x` for large `x`).
pub fn exp_scaled_e1(x: f64) -> Result<f64> {
    check_e1_arg(x)?;
    if x <= E1_SWITCH {
        Ok(x.exp() * e1_series(x))
    } else if x.is_infinite() {
        Ok(0.0)
    } else {
        Ok(e1_scaled_cf(x))
    }
}

/// `z = n 10^(-rho/10)`.
#[inline]
fn z_of(rho: SnrDb, n: f64) -> f64 {
    n * (-DB_SLOPE * rho.db()).exp()
}

/// Ergodic ZF sum-rate in Rayleigh fading, in nats.
pub fn ergodic_rate(rho: SnrDb, n: usize) -> Result<RateNats> {
    let nf = check_n(n)?;
    let z = z_of(rho, nf);
    Ok(RateNats::new_unchecked(nf * exp_scaled_e1(z)?))
}

/// High-SNR asymptote `n (rho ln(10)/10 - gamma - ln n)`; a line in `rho`.
pub fn ergodic_asymptote(rho: SnrDb, n: usize) -> Result<f64> {
    let nf = check_n(n)?;
    Ok(nf * (rho.db() * LN_10 / 10.0 - EULER_GAMMA - nf.ln()))
}

/// Zero crossing of [`ergodic_asymptote`]: `10 (gamma + ln n) / ln 10`.
pub fn ergodic_intercept(n: usize) -> Result<SnrDb> {
    let nf = check_n(n)?;
    SnrDb::new(10.0 * (EULER_GAMMA + nf.ln()) / LN_10)
}

/// `n e^(e^-gamma) E1(e^-gamma)`, the ergodic rate at the intercept
/// (about 0.8618 nats per antenna).
pub fn rate_at_ergodic_intercept(n: usize) -> Result<RateNats> {
    let nf = check_n(n)?;
    let k = (-EULER_GAMMA).exp();
    Ok(RateNats::new_unchecked(nf * exp_scaled_e1(k)?))
}

/// Second derivative of [`ergodic_rate`] with respect to `rho` in dB:
/// `n c^2 z ((1+z) e^z E1(z) - 1)`.
///
/// The bracket cancels as `1/z^2` for large `z`, so relative accuracy
/// degrades like `eps z^2` deep in the low-SNR region.
pub fn ergodic_second_derivative(rho: SnrDb, n: usize) -> Result<f64> {
    let nf = check_n(n)?;
    let z = z_of(rho, nf);
    let f = exp_scaled_e1(z)?;
    Ok(nf * DB_SLOPE * DB_SLOPE * z * ((1.0 + z) * f - 1.0))
}

/// Maximizer of the ergodic `R_E''` by golden-section search within 20 dB
/// of the ergodic intercept, to [`ERGODIC_BEND_TOL_DB`].
pub fn ergodic_bend_numeric(n: usize) -> Result<SnrDb> {
    let center = ergodic_intercept(n)?.db();
    let x = golden_section_max(
        |r| {
            SnrDb::new(r)
                .and_then(|r| ergodic_second_derivative(r, n))
                .unwrap_or(f64::NAN)
        },
        center - ERGODIC_BRACKET_DB,
        center + ERGODIC_BRACKET_DB,
        ERGODIC_BEND_TOL_DB,
    )?;
    SnrDb::new(x)
}

/// Antenna count for the ergodic analysis, bundled with `gamma`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ErgodicParams {
    n: usize,
}

impl ErgodicParams {
    pub fn new(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(Self { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gamma_const(&self) -> f64 {
        EULER_GAMMA
    }

    pub fn rate(&self, rho: SnrDb) -> RateNats {
        ergodic_rate(rho, self.n).expect("n validated")
    }

    pub fn asymptote(&self, rho: SnrDb) -> f64 {
        ergodic_asymptote(rho, self.n).expect("n validated")
    }

    pub fn intercept(&self) -> SnrDb {
        ergodic_intercept(self.n).expect("n validated")
    }

    pub fn rate_at_intercept(&self) -> RateNats {
        rate_at_ergodic_intercept(self.n).expect("n validated")
    }

    pub fn bend_numeric(&self) -> SnrDb {
        ergodic_bend_numeric(self.n).expect("n validated")
    }
}
