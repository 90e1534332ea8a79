//! Rayleigh channel draws, the channel penalty `eta` and the ZF precoder.
//!
//! Random numbers come from ChaCha8 (`rand_chacha`) seeded with
//! `seed_from_u64`. Each 64-bit output `w` becomes a uniform on (0, 1] as
//! `((w >> 11) + 1) * 2^-53`. A CN(0,1) entry is produced from two such
//! uniforms `u1, u2` by the polar Box-Muller transform
//!
//! ```text
//! r = sqrt(-ln u1),  theta = 2*pi*u2,  h = r*cos(theta) + i*r*sin(theta)
//! ```
//!
//! so `|h|^2 = -ln u1` is exactly Exp(1) and each component has variance 1/2.
//! Entries are filled in row-major order.

use std::f64::consts::PI;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matrix::{Complex, ComplexMat};
use crate::{Error, Result};

const TWO_POW_NEG_53: f64 = 1.0 / (1u64 << 53) as f64;

/// Uniform draw on (0, 1].
#[inline]
pub fn uniform_open01<R: RngCore>(rng: &mut R) -> f64 {
    ((rng.next_u64() >> 11) + 1) as f64 * TWO_POW_NEG_53
}

/// Exp(1) draw by inverse CDF, `-ln u`.
#[inline]
pub fn standard_exponential<R: RngCore>(rng: &mut R) -> f64 {
    -uniform_open01(rng).ln()
}

/// Circularly-symmetric complex Gaussian with unit variance.
#[inline]
pub fn complex_gaussian<R: RngCore>(rng: &mut R) -> Complex {
    let r = standard_exponential(rng).sqrt();
    let theta = 2.0 * PI * uniform_open01(rng);
    Complex::new(r * theta.cos(), r * theta.sin())
}

/// `n x n` matrix of i.i.d. CN(0,1) entries drawn from `rng`.
pub fn rayleigh_from_rng<R: RngCore>(n: usize, rng: &mut R) -> Result<ComplexMat> {
    if n == 0 {
        return Err(Error::EmptyMatrix);
    }
    let data = (0..n * n).map(|_| complex_gaussian(rng)).collect();
    ComplexMat::new(n, data)
}

/// Seeded `n x n` Rayleigh channel. Identical `(n, seed)` give identical matrices.
pub fn sample_rayleigh(n: usize, seed: u64) -> Result<ComplexMat> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rayleigh_from_rng(n, &mut rng)
}

/// A channel matrix together with its inverse and `eta = ||H^-1||_F^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRealization {
    h: ComplexMat,
    h_inv: ComplexMat,
    eta: f64,
}

impl ChannelRealization {
    pub fn h(&self) -> &ComplexMat {
        &self.h
    }

    pub fn h_inv(&self) -> &ComplexMat {
        &self.h_inv
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn dim(&self) -> usize {
        self.h.dim()
    }
}

/// Normalized zero-forcing precoder `V = H^-1 / ||H^-1||_F`.
#[derive(Debug, Clone, PartialEq)]
pub struct Precoder {
    v: ComplexMat,
}

impl Precoder {
    pub fn v(&self) -> &ComplexMat {
        &self.v
    }

    pub fn into_inner(self) -> ComplexMat {
        self.v
    }
}

pub fn realize_channel(h: ComplexMat) -> Result<ChannelRealization> {
    let h_inv = h.lu_invert()?;
    let eta = h_inv.frobenius_sq();
    if !(eta > 0.0 && eta.is_finite()) {
        return Err(Error::InvalidEta(eta));
    }
    Ok(ChannelRealization { h, h_inv, eta })
}

pub fn zf_precoder(c: &ChannelRealization) -> Precoder {
    Precoder {
        v: c.h_inv.scale(1.0 / c.eta.sqrt()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn re(v: f64) -> Complex {
        Complex::new(v, 0.0)
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = sample_rayleigh(5, 99).unwrap();
        let b = sample_rayleigh(5, 99).unwrap();
        for (x, y) in a.entries().iter().zip(b.entries()) {
            assert_eq!(x.re.to_bits(), y.re.to_bits());
            assert_eq!(x.im.to_bits(), y.im.to_bits());
        }
        assert_ne!(a, sample_rayleigh(5, 100).unwrap());
    }

    #[test]
    fn zero_dimension_rejected() {
        assert_eq!(sample_rayleigh(0, 1), Err(Error::EmptyMatrix));
    }

    fn mean_and_stderr(xs: &[f64]) -> (f64, f64) {
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
        (mean, (var / n).sqrt())
    }

    #[test]
    fn entry_power_is_unit() {
        // 100 draws of 32x32 = 102400 entries
        let mut p = Vec::new();
        let mut reals = Vec::new();
        for seed in 0..100 {
            let h = sample_rayleigh(32, seed).unwrap();
            p.extend(h.entries().iter().map(|z| z.norm_sqr()));
            reals.extend(h.entries().iter().map(|z| z.re));
        }
        let (m, se) = mean_and_stderr(&p);
        assert!((m - 1.0).abs() < 3.0 * se, "mean |h|^2 = {m} +- {se}");

        // variance of the real part: sample E[re^2] with its own stderr (mean is 0)
        let sq: Vec<f64> = reals.iter().map(|x| x * x).collect();
        let (v, vse) = mean_and_stderr(&sq);
        assert!((v - 0.5).abs() < 3.0 * vse, "var re = {v} +- {vse}");
    }

    #[test]
    fn identity_channel() {
        let c = realize_channel(ComplexMat::identity(2).unwrap()).unwrap();
        assert_eq!(c.eta(), 2.0);
        let v = zf_precoder(&c);
        let expected = ComplexMat::identity(2).unwrap().scale(1.0 / 2f64.sqrt());
        assert!(v.v().max_abs_diff(&expected).unwrap() < 1e-16);
    }

    #[test]
    fn diagonal_channel() {
        let c = realize_channel(ComplexMat::from_diag(&[re(2.0), re(1.0)]).unwrap()).unwrap();
        assert_eq!(c.eta(), 1.25);
    }

    #[test]
    fn singular_channel_propagates() {
        let h = ComplexMat::from_real_rows(&[&[1.0, 1.0], &[1.0, 1.0]]).unwrap();
        assert_eq!(realize_channel(h), Err(Error::Singular { pivot: 1 }));
    }

    #[test]
    fn eta_is_recomputed_norm() {
        let h = sample_rayleigh(4, 7).unwrap();
        let c = realize_channel(h.clone()).unwrap();
        assert_eq!(c.eta(), h.lu_invert().unwrap().frobenius_sq());
        assert_eq!(c.eta(), c.h_inv().frobenius_sq());
    }

    #[test]
    fn precoder_cancels_interference() {
        let c = realize_channel(sample_rayleigh(4, 3).unwrap()).unwrap();
        let hv = c.h().mat_mul(zf_precoder(&c).v()).unwrap();
        let d0 = hv[(0, 0)];
        for i in 0..4 {
            for j in 0..4 {
                if i == j {
                    assert!((hv[(i, i)] - d0).norm() < 1e-10);
                } else {
                    assert!(hv[(i, j)].norm() < 1e-10);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn precoder_unit_norm(n in 1usize..9, seed in any::<u64>()) {
            let c = realize_channel(sample_rayleigh(n, seed).unwrap()).unwrap();
            prop_assert!((zf_precoder(&c).v().frobenius_sq() - 1.0).abs() < 1e-12);
        }

        #[test]
        fn hv_is_scaled_identity(n in 1usize..9, seed in any::<u64>()) {
            let c = realize_channel(sample_rayleigh(n, seed).unwrap()).unwrap();
            let inv = c.h_inv();
            prop_assume!(c.h().norm_one() * inv.norm_one() < 1e6);
            let hv = c.h().mat_mul(zf_precoder(&c).v()).unwrap();
            let target = ComplexMat::identity(n).unwrap().scale(1.0 / c.eta().sqrt());
            prop_assert!(hv.max_abs_diff(&target).unwrap() < 1e-10);
        }

        #[test]
        fn eta_scale_law(n in 1usize..7, seed in any::<u64>(), alpha in 0.01f64..100.0) {
            let h = sample_rayleigh(n, seed).unwrap();
            let c = realize_channel(h.clone()).unwrap();
            prop_assume!(h.norm_one() * c.h_inv().norm_one() < 1e5);
            let base = c.eta();
            let scaled = realize_channel(h.scale(alpha)).unwrap().eta();
            let expect = base / (alpha * alpha);
            prop_assert!((scaled - expect).abs() <= 1e-10 * expect);
        }

        #[test]
        fn realization_deterministic(n in 1usize..6, seed in any::<u64>()) {
            let a = realize_channel(sample_rayleigh(n, seed).unwrap()).unwrap();
            let b = realize_channel(sample_rayleigh(n, seed).unwrap()).unwrap();
            prop_assert_eq!(a.eta().to_bits(), b.eta().to_bits());
            prop_assert_eq!(a, b);
        }
    }
}
