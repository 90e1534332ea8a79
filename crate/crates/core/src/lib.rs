//! Zero-forcing multiuser-MIMO sum-rate analysis.
//!
//! The crate covers the whole pipeline from a channel matrix to the
//! low/high-SNR transition of the sum-rate:
//!
//! - [`matrix`]: dense complex square matrices, LU inversion, Frobenius norm.
//! - [`channel`]: seeded Rayleigh draws, the channel penalty `eta = ||H^-1||_F^2`
//!   and the normalized ZF precoder.
//! - [`rate`]: closed-form sum-rate, its dB-domain derivatives, the high-SNR
//!   asymptote and the bend point (analytic and golden-section).
//! - [`ergodic`]: the exponential integral `E1` and the ergodic Rayleigh-fading
//!   counterparts of the above.
//! - [`montecarlo`]: seeded, worker-count independent Monte Carlo estimators.
//! - [`numerics`]: golden-section search, central differences, SNR grids.
//!
//! SNR is always in dB and rates are always in nats.

// `!(x > y)` is used on purpose so that NaN lands on the error branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod channel;
pub mod ergodic;
mod error;
pub mod matrix;
pub mod montecarlo;
pub mod numerics;
#[cfg(any(test, feature = "oracle"))]
pub mod oracle;
pub mod rate;

pub use channel::{realize_channel, sample_rayleigh, zf_precoder, ChannelRealization, Precoder};
pub use ergodic::{
    ergodic_asymptote, ergodic_bend_numeric, ergodic_intercept, ergodic_rate,
    ergodic_second_derivative, exp_integral_e1, exp_scaled_e1, rate_at_ergodic_intercept,
    ErgodicParams, EULER_GAMMA,
};
pub use error::{Error, Result};
pub use matrix::{Complex, ComplexMat};
pub use montecarlo::{
    compare, mc_ergodic_exponential, mc_ergodic_zf, ComparisonReport, McEstimate,
};
pub use rate::{
    bend_point_analytic, bend_point_numeric, high_snr_asymptote, intercept, rate_derivative,
    sum_rate, third_derivative_unsimplified, BendResult, RateNats, SnrDb, DB_SLOPE,
};
