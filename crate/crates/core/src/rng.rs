//! Seeded, portable randomness.
//!
//! Everything random in this crate flows through [`SeededRng`], a thin layer
//! over ChaCha8. The generator is stream-splittable: independent logical
//! sources (one per dataset column, one for labels, one for auxiliary draws)
//! take the same seed but distinct stream ids, so adding a column never
//! perturbs the draws of another.

use num_traits::Float;

use rand_core::{RngCore, SeedableRng};

/// Deterministic random source; identical (seed, stream) gives an identical
/// sequence on every platform.
#[derive(Clone, Debug)]
pub struct SeededRng(rand_chacha::ChaCha8Rng);

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        Self::with_stream(seed, 0)
    }

    /// Stream-split constructor. Conventions used by the generators:
    /// stream 0 is the label/target source, stream `j + 1` feeds feature
    /// column `j`, and stream `d + 1` is the auxiliary source (truncation,
    /// noise).
    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self(rng)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform draw in `[0, 1)` with 53 bits of precision.
    pub fn uniform(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.uniform() < p
    }

    /// Standard normal via Box-Muller (cosine branch only).
    pub fn normal(&mut self) -> f64 {
        let u1 = self.uniform().max(1e-300);
        let u2 = self.uniform();
        (-2.0 * u1.ln()).sqrt() * (2.0 * core::f64::consts::PI * u2).cos()
    }

    /// Exponential(1) draw.
    pub fn exponential(&mut self) -> f64 {
        -(1.0 - self.uniform()).max(1e-300).ln()
    }

    /// Standard normal conditioned on exceeding `lower`. Exact for every
    /// truncation point: plain accept-reject when `lower <= 0` (acceptance
    /// >= 1/2), Robert's translated-exponential proposal otherwise (acceptance
    /// >= 1/2 and improving as `lower` grows), so the sampler never stalls no
    /// matter how far out the tail is.
    pub fn truncated_normal(&mut self, lower: f64) -> f64 {
        if lower <= 0.0 {
            loop {
                let x = self.normal();
                if x > lower {
                    return x;
                }
            }
        }
        let alpha = 0.5 * (lower + (lower * lower + 4.0).sqrt());
        loop {
            let x = lower + self.exponential() / alpha;
            let d = x - alpha;
            if self.uniform() <= (-0.5 * d * d).exp() {
                return x;
            }
        }
    }

    /// Uniform index in `[0, n)` without modulo bias.
    pub fn index(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        let n = n as u64;
        let limit = u64::MAX - u64::MAX % n;
        loop {
            let v = self.0.next_u64();
            if v < limit {
                return (v % n) as usize;
            }
        }
    }

    /// Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, slice: &mut [T]) {
        for i in (1..slice.len()).rev() {
            let j = self.index(i + 1);
            slice.swap(i, j);
        }
    }
}
