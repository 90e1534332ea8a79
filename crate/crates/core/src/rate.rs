//! Deterministic ZF sum-rate `R(rho) = n ln(1 + 10^(rho/10) / eta)` in nats,
//! its derivatives with respect to `rho` in dB, the high-SNR asymptote and
//! the bend point (the maximizer of `R''`).
//!
//! Internally every closed form is written in terms of the log-ratio
//! `s = ln(x / eta) = c rho - ln eta` with `x = 10^(rho/10)` and
//! `c = ln(10)/10`. With `u = exp(-|s|)`:
//!
//! ```text
//! R   = n softplus(s)
//! R'  = n c   logistic(s)
//! R'' = n c^2 u / (1+u)^2
//! R'''= n c^3 u / (1+u)^2 * sign(-s) (1-u)/(1+u)
//! ```
//!
//! which are the textbook forms `n c x/(eta+x)`, `n c^2 eta x/(eta+x)^2`,
//! `n c^3 eta x (eta-x)/(eta+x)^3` rewritten so that nothing overflows for
//! extreme SNR. `R''` depends on `|s|` only, hence is symmetric about `s = 0`.

use std::f64::consts::{LN_10, LN_2};
use std::fmt;

use crate::numerics::golden_section_max;
use crate::{Error, Result};

/// `c = ln(10)/10`: nats of rate slope per dB per antenna at high SNR.
pub const DB_SLOPE: f64 = LN_10 / 10.0;

/// Tolerance of [`bend_point_numeric`], in dB.
pub const BEND_TOL_DB: f64 = 1e-6;

/// Half-width of the default search bracket around the intercept, in dB.
pub const DEFAULT_BRACKET_DB: f64 = 40.0;

/// SNR in decibels, `10 log10(P / sigma^2)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct SnrDb(f64);

impl SnrDb {
    pub fn new(rho: f64) -> Result<Self> {
        if rho.is_finite() {
            Ok(Self(rho))
        } else {
            Err(Error::InvalidSnr(rho))
        }
    }

    #[inline]
    pub fn db(self) -> f64 {
        self.0
    }

    /// Linear power ratio `10^(rho/10)`.
    #[inline]
    pub fn linear(self) -> f64 {
        10f64.powf(self.0 / 10.0)
    }
}

impl fmt::Display for SnrDb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} dB", self.0)
    }
}

/// A rate in nats.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct RateNats(f64);

impl RateNats {
    pub(crate) fn new_unchecked(v: f64) -> Self {
        debug_assert!(v >= 0.0, "negative rate {v}");
        Self(v)
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    /// The same rate in bits.
    #[inline]
    pub fn in_bits(self) -> f64 {
        self.0 / LN_2
    }
}

/// Bend point of the deterministic sum-rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BendResult {
    pub rho_bend: SnrDb,
    pub rho_int: SnrDb,
    pub rate_at_bend: RateNats,
    /// Peak value of `R''`, in nats per dB^2.
    pub r2_max: f64,
}

pub(crate) fn check_eta(eta: f64) -> Result<()> {
    if eta > 0.0 && eta.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidEta(eta))
    }
}

pub(crate) fn check_n(n: usize) -> Result<f64> {
    if n == 0 {
        Err(Error::InvalidAntennaCount)
    } else {
        Ok(n as f64)
    }
}

#[inline]
fn log_ratio(rho: SnrDb, eta: f64) -> f64 {
    DB_SLOPE * rho.db() - eta.ln()
}

/// `ln(1 + e^s)` without overflow.
#[inline]
fn softplus(s: f64) -> f64 {
    if s > 0.0 {
        s + (-s).exp().ln_1p()
    } else {
        s.exp().ln_1p()
    }
}

/// `1 / (1 + e^-s)` without overflow.
#[inline]
fn logistic(s: f64) -> f64 {
    if s >= 0.0 {
        1.0 / (1.0 + (-s).exp())
    } else {
        let e = s.exp();
        e / (1.0 + e)
    }
}

/// Sum-rate in nats at SNR `rho` for channel penalty `eta` and `n` users.
pub fn sum_rate(rho: SnrDb, eta: f64, n: usize) -> Result<RateNats> {
    check_eta(eta)?;
    let n = check_n(n)?;
    Ok(RateNats::new_unchecked(n * softplus(log_ratio(rho, eta))))
}

/// Derivative of [`sum_rate`] with respect to `rho` (dB) of order 1, 2 or 3.
pub fn rate_derivative(rho: SnrDb, eta: f64, n: usize, order: u8) -> Result<f64> {
    check_eta(eta)?;
    let n = check_n(n)?;
    let s = log_ratio(rho, eta);
    let u = (-s.abs()).exp();
    let bell = u / ((1.0 + u) * (1.0 + u));
    match order {
        1 => Ok(n * DB_SLOPE * logistic(s)),
        2 => Ok(n * DB_SLOPE.powi(2) * bell),
        3 => {
            let skew = (1.0 - u) / (1.0 + u);
            let signed = if s > 0.0 { -skew } else { skew };
            Ok(n * DB_SLOPE.powi(3) * bell * signed)
        }
        k => Err(Error::InvalidOrder(k)),
    }
}

/// Third derivative evaluated literally as
/// `N/eta^2 (ln10/10)^3 (eta 10^(rho/10) - 10^(2rho/10)) / (1 + 10^(rho/10)/eta)^3`.
///
/// Kept as a transcription check for [`rate_derivative`]; it overflows for
/// large `rho` where the closed form does not.
pub fn third_derivative_unsimplified(rho: SnrDb, eta: f64, n: usize) -> Result<f64> {
    check_eta(eta)?;
    let n = check_n(n)?;
    let x = 10f64.powf(rho.db() / 10.0);
    let x2 = 10f64.powf(2.0 * rho.db() / 10.0);
    let c = LN_10 / 10.0;
    Ok(n / (eta * eta) * c.powi(3) * ((eta * x - x2) / (1.0 + x / eta).powi(3)))
}

/// High-SNR asymptote `n ln(x / eta)`. A line in `rho`, negative below the
/// intercept.
pub fn high_snr_asymptote(rho: SnrDb, eta: f64, n: usize) -> Result<f64> {
    check_eta(eta)?;
    let n = check_n(n)?;
    Ok(n * log_ratio(rho, eta))
}

/// SNR where the high-SNR asymptote crosses zero: `10 ln(eta) / ln(10)`.
pub fn intercept(eta: f64) -> Result<SnrDb> {
    check_eta(eta)?;
    SnrDb::new(10.0 * eta.ln() / LN_10)
}

/// Closed-form bend point. It coincides with the asymptote intercept, and
/// there the rate is exactly `n ln 2` and `R'' = n c^2 / 4`.
pub fn bend_point_analytic(eta: f64, n: usize) -> Result<BendResult> {
    let rho_int = intercept(eta)?;
    let rate_at_bend = sum_rate(rho_int, eta, n)?;
    let r2_max = rate_derivative(rho_int, eta, n, 2)?;
    Ok(BendResult {
        rho_bend: rho_int,
        rho_int,
        rate_at_bend,
        r2_max,
    })
}

/// Maximizer of `second_deriv` on `bracket` by golden-section search, to
/// [`BEND_TOL_DB`].
pub fn bend_point_numeric<F>(second_deriv: F, bracket: (SnrDb, SnrDb)) -> Result<SnrDb>
where
    F: Fn(SnrDb) -> f64,
{
    let (lo, hi) = (bracket.0.db(), bracket.1.db());
    let x = golden_section_max(|r| second_deriv(SnrDb(r)), lo, hi, BEND_TOL_DB)?;
    SnrDb::new(x)
}

/// Default bracket `[rho_int - 40, rho_int + 40]` dB.
pub fn default_bracket(eta: f64) -> Result<(SnrDb, SnrDb)> {
    let c = intercept(eta)?.db();
    Ok((SnrDb(c - DEFAULT_BRACKET_DB), SnrDb(c + DEFAULT_BRACKET_DB)))
}

/// Numeric bend point of the closed-form `R''` over the default bracket.
pub fn bend_point_numeric_closed_form(eta: f64, n: usize) -> Result<SnrDb> {
    check_n(n)?;
    let bracket = default_bracket(eta)?;
    bend_point_numeric(
        |r| rate_derivative(r, eta, n, 2).unwrap_or(f64::NAN),
        bracket,
    )
}
