//! Seeded, portable standard-normal sampling.
//!
//! The generator is ChaCha20 keyed with the little-endian bytes of the 64-bit
//! seed (remaining key bytes zero, nonce zero) and a caller-chosen stream id.
//! Uniforms take the top 53 bits of each 64-bit output,
//! `u = (x >> 11) · 2⁻⁵³`, and normals come in pairs from the Box–Muller
//! transform `r = sqrt(-2 ln(1 - u₁))`, `(r cos 2πu₂, r sin 2πu₂)`. Every step
//! is specified bit-for-bit, so other implementations can regenerate the same
//! fixtures.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::linalg::vector::{norm2, scale};
use crate::Scalar;

/// Stream used for test vectors `u`, `v`.
pub const STREAM_VECTORS: u64 = 0;
/// Stream used for IDR shadow matrices.
pub const STREAM_SHADOW: u64 = 1;

pub struct NormalSampler {
    rng: ChaCha20Rng,
    spare: Option<f64>,
}

impl NormalSampler {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&seed.to_le_bytes());
        let mut rng = ChaCha20Rng::from_seed(key);
        rng.set_stream(stream);
        Self { rng, spare: None }
    }

    pub fn uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn normal(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let u1 = self.uniform();
        let u2 = self.uniform();
        let r = (-2.0 * (1.0 - u1).ln()).sqrt();
        let theta = 2.0 * std::f64::consts::PI * u2;
        self.spare = Some(r * theta.sin());
        r * theta.cos()
    }

    pub fn normals<T: Scalar>(&mut self, n: usize) -> Vec<T> {
        (0..n).map(|_| T::lit(self.normal())).collect()
    }
}

/// Standard-normal vector scaled to unit Euclidean norm.
pub fn random_unit_vector<T: Scalar>(n: usize, seed: u64) -> Vec<T> {
    let mut x = NormalSampler::new(seed, STREAM_VECTORS).normals::<T>(n);
    let nrm = norm2(&x);
    scale(nrm.recip(), &mut x);
    x
}
