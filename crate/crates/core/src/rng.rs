//! Seed derivation and complex Gaussian sampling.
//!
//! Per-trial streams are derived from `(seed, index)` with the splitmix64
//! finalizer, never from execution order: trial `i` always sees the stream
//! `ChaCha8Rng::seed_from_u64(derive_seed(seed, i))`.

pub use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rand_distr::{Distribution, StandardNormal};

use crate::linalg::Complex;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// The splitmix64 output function applied to `state + GOLDEN_GAMMA`.
pub fn splitmix64(state: u64) -> u64 {
    let mut z = state.wrapping_add(GOLDEN_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of the `index`-th independent stream under `seed`.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    splitmix64(splitmix64(seed) ^ index.wrapping_mul(GOLDEN_GAMMA))
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    rng_from_seed(derive_seed(seed, index))
}

/// Standard complex Gaussian: real and imaginary parts `N(0, 1/2)`, so
/// `E|z|^2 = 1`.
pub fn complex_gaussian<R: RngCore + ?Sized>(rng: &mut R) -> Complex {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex::new(re, im) * core::f64::consts::FRAC_1_SQRT_2
}
