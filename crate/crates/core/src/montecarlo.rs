//! Seeded Monte Carlo estimates of the ergodic sum-rate.
//!
//! Sample `i` draws from its own ChaCha8 stream: the generator is seeded
//! with `seed_from_u64(seed)` and switched to stream `i`. Samples are
//! grouped in fixed chunks of [`CHUNK`] indices; chunks may run on any
//! number of rayon workers but partial sums are always combined in chunk
//! order, so the result does not depend on the thread count.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::channel::{rayleigh_from_rng, realize_channel, standard_exponential};
use crate::rate::{check_n, sum_rate, SnrDb};
use crate::{Error, Result};

pub const CHUNK: usize = 8192;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    /// Sample mean, nats.
    pub mean: f64,
    /// Standard error of the mean from the unbiased sample variance, nats.
    pub stderr: f64,
    pub samples: usize,
    pub seed: u64,
    /// Channel draws rejected as singular and redrawn. Expected to be zero.
    pub resampled: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonReport {
    pub abs_diff: f64,
    pub z_score: f64,
}

fn sample_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

fn estimate<F>(samples: usize, seed: u64, draw: F) -> Result<McEstimate>
where
    F: Fn(&mut ChaCha8Rng) -> Result<(f64, u64)> + Sync,
{
    if samples < 2 {
        return Err(Error::TooFewSamples(samples));
    }
    let mut values = vec![0.0; samples];
    let partial: Vec<Result<(f64, u64)>> = values
        .par_chunks_mut(CHUNK)
        .enumerate()
        .map(|(c, chunk)| {
            let mut sum = 0.0;
            let mut redraws = 0;
            for (k, slot) in chunk.iter_mut().enumerate() {
                let mut rng = sample_rng(seed, c * CHUNK + k);
                let (v, r) = draw(&mut rng)?;
                *slot = v;
                sum += v;
                redraws += r;
            }
            Ok((sum, redraws))
        })
        .collect();

    let mut total = 0.0;
    let mut resampled = 0;
    for p in partial {
        let (s, r) = p?;
        total += s;
        resampled += r;
    }
    let count = samples as f64;
    let mean = total / count;

    let sq: Vec<f64> = values
        .par_chunks(CHUNK)
        .map(|chunk| chunk.iter().map(|v| (v - mean) * (v - mean)).sum())
        .collect();
    let var = sq.iter().sum::<f64>() / (count - 1.0);

    Ok(McEstimate {
        mean,
        stderr: (var / count).sqrt(),
        samples,
        seed,
        resampled,
    })
}

/// Mean of `n ln(1 + 10^(rho/10) g / n)` over `g ~ Exp(1)`.
pub fn mc_ergodic_exponential(
    rho: SnrDb,
    n: usize,
    samples: usize,
    seed: u64,
) -> Result<McEstimate> {
    let nf = check_n(n)?;
    let snr_per_user = rho.linear() / nf;
    estimate(samples, seed, |rng| {
        let g = standard_exponential(rng);
        Ok((nf * (snr_per_user * g).ln_1p(), 0))
    })
}

/// Mean of the exact ZF sum-rate `n ln(1 + 10^(rho/10) / eta)` over
/// `n x n` Rayleigh channels. Singular draws are redrawn from the same
/// sample stream and counted in [`McEstimate::resampled`].
pub fn mc_ergodic_zf(rho: SnrDb, n: usize, samples: usize, seed: u64) -> Result<McEstimate> {
    check_n(n)?;
    estimate(samples, seed, |rng| {
        let mut redraws = 0;
        loop {
            let h = rayleigh_from_rng(n, rng)?;
            match realize_channel(h) {
                Ok(c) => return Ok((sum_rate(rho, c.eta(), n)?.value(), redraws)),
                Err(Error::Singular { .. }) => redraws += 1,
                Err(e) => return Err(e),
            }
        }
    })
}

/// Distance of an estimate from an analytic value, in nats and in
/// standard errors.
pub fn compare(est: &McEstimate, analytic: f64) -> Result<ComparisonReport> {
    if !(est.stderr > 0.0) {
        return Err(Error::ZeroStdErr);
    }
    let abs_diff = (est.mean - analytic).abs();
    Ok(ComparisonReport {
        abs_diff,
        z_score: abs_diff / est.stderr,
    })
}
