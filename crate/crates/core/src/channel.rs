//! Binary-input AWGN channel with a three-level quantizer.
//!
//! A bit `x` is sent as `(-1)^x`, Gaussian noise of variance
//! `σ² = 1 / (2 Es/N0)` is added, and the result `ỹ` is mapped to `0` when
//! `ỹ > T`, to `1` when `ỹ < −T` and to an erasure when `|ỹ| ≤ T`.
//!
//! The library works in linear Es/N0; [`db_to_linear`] and [`linear_to_db`]
//! convert at the boundary.

use rand::Rng;
use rand_distr::StandardNormal;
use statrs::function::erf::erfc;

use crate::error::{Error, Result};
use crate::word::Ternary;

/// Upper end of the erasure-threshold search interval.
pub const T_MAX: f64 = 1.5;

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

/// Gaussian tail probability `P(N(0,1) > x)`.
pub fn qfunc(x: f64) -> f64 {
    0.5 * erfc(x / std::f64::consts::SQRT_2)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelParams {
    /// Linear Es/N0.
    pub es_n0: f64,
    /// Erasure threshold `T ≥ 0`.
    pub threshold: f64,
}

impl ChannelParams {
    pub fn new(es_n0: f64, threshold: f64) -> Result<Self> {
        if !(es_n0 > 0.0 && es_n0.is_finite()) {
            return Err(Error::Domain("Es/N0 must be positive and finite"));
        }
        if !(threshold >= 0.0 && threshold.is_finite()) {
            return Err(Error::Domain("erasure threshold must be nonnegative"));
        }
        Ok(ChannelParams { es_n0, threshold })
    }

    pub fn from_db(es_n0_db: f64, threshold: f64) -> Result<Self> {
        Self::new(db_to_linear(es_n0_db), threshold)
    }

    pub fn sigma2(&self) -> f64 {
        0.5 / self.es_n0
    }

    pub fn sigma(&self) -> f64 {
        self.sigma2().sqrt()
    }
}

/// Symbol probabilities of the quantized channel.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EaeChannelStats {
    pub delta: f64,
    pub epsilon: f64,
    pub correct: f64,
}

pub fn eae_probabilities(p: &ChannelParams) -> EaeChannelStats {
    let a = (2.0 * p.es_n0).sqrt();
    let delta = qfunc(a * (1.0 + p.threshold));
    // Q(a(1−T)) − Q(a(1+T)) equals 1 − Q(a(T−1)) − Q(a(T+1)) and is exactly 0 at T = 0
    let epsilon = (qfunc(a * (1.0 - p.threshold)) - delta).max(0.0);
    EaeChannelStats {
        delta,
        epsilon,
        correct: 1.0 - delta - epsilon,
    }
}

fn xlog2(x: f64, ratio: f64) -> f64 {
    if x > 0.0 {
        x * ratio.log2()
    } else {
        0.0
    }
}

/// Capacity of the error-and-erasure channel in bits per symbol.
pub fn capacity(p: &ChannelParams) -> f64 {
    capacity_from_stats(&eae_probabilities(p))
}

pub fn capacity_from_stats(s: &EaeChannelStats) -> f64 {
    let keep = 1.0 - s.epsilon;
    xlog2(s.correct, 2.0 * s.correct / keep) + xlog2(s.delta, 2.0 * s.delta / keep)
}

/// Binary entropy in bits.
pub fn h2(p: f64) -> f64 {
    -xlog2(p, p) - xlog2(1.0 - p, 1.0 - p)
}

/// Maximizes capacity over `T ∈ [0, T_MAX]` and returns `(T_opt, C_max)`.
///
/// A grid of step 0.01 locates the best cell; golden-section search then
/// refines inside the neighbouring cells to a width below 1e-5. The grid
/// optimum is kept if refinement does not improve on it.
pub fn optimize_threshold(es_n0: f64) -> (f64, f64) {
    let c = |t: f64| capacity(&ChannelParams { es_n0, threshold: t });
    let steps = (T_MAX / 0.01).round() as usize;
    let (mut best_t, mut best_c) = (0.0, c(0.0));
    for i in 1..=steps {
        let t = i as f64 * 0.01;
        let v = c(t);
        if v > best_c {
            (best_t, best_c) = (t, v);
        }
    }
    let (mut lo, mut hi) = ((best_t - 0.01).max(0.0), (best_t + 0.01).min(T_MAX));
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (c(x1), c(x2));
    while hi - lo > 1e-5 {
        if f1 < f2 {
            lo = x1;
            (x1, f1) = (x2, f2);
            x2 = lo + g * (hi - lo);
            f2 = c(x2);
        } else {
            hi = x2;
            (x2, f2) = (x1, f1);
            x1 = hi - g * (hi - lo);
            f1 = c(x1);
        }
    }
    let t = 0.5 * (lo + hi);
    let v = c(t);
    if v > best_c {
        (t, v)
    } else {
        (best_t, best_c)
    }
}

/// Quantizes one noisy observation.
#[inline]
pub fn quantize(y: f64, threshold: f64) -> Ternary {
    if y.abs() <= threshold {
        Ternary::Erasure
    } else if y > 0.0 {
        Ternary::Zero
    } else {
        Ternary::One
    }
}

/// Draws `bits.len()` unit-variance noise samples from `rng`.
///
/// Kept separate from the scaling so that runs at different Es/N0 or `T`
/// can share one noise realization.
pub fn unit_noise<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Vec<f64> {
    (0..len).map(|_| rng.sample(StandardNormal)).collect()
}

/// Transmits `bits` with the given unit-variance noise and quantizes.
pub fn quantize_with_noise(bits: &[u8], noise: &[f64], p: &ChannelParams) -> Vec<Ternary> {
    let sigma = p.sigma();
    bits.iter()
        .zip(noise)
        .map(|(&b, &z)| {
            let x = if b & 1 == 0 { 1.0 } else { -1.0 };
            quantize(x + sigma * z, p.threshold)
        })
        .collect()
}

pub fn transmit_and_quantize<R: Rng + ?Sized>(
    bits: &[u8],
    p: &ChannelParams,
    rng: &mut R,
) -> Vec<Ternary> {
    quantize_with_noise(bits, &unit_noise(bits.len(), rng), p)
}
