//! Seeded randomness.
//!
//! Every random draw in the crate comes from a [`ChaCha20Rng`] keyed by an
//! explicit 64-bit seed, so results are reproducible across platforms and
//! runs. Child seeds for trials, cells and sub-streams are derived with
//! [`derive_seed`], which folds a list of coordinates into the parent seed
//! using the SplitMix64 finalizer. Derivation depends only on the
//! coordinates, never on execution order.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

/// The generator used throughout the crate.
pub type Rng = ChaCha20Rng;

/// Builds the generator for `seed`.
pub fn rng_from_seed(seed: u64) -> Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives a child seed from `parent` and a coordinate path.
///
/// `derive_seed(s, &[a, b])` is `mix(mix(mix(s) ^ a) ^ b)` where `mix` is the
/// SplitMix64 output function.
pub fn derive_seed(parent: u64, path: &[u64]) -> u64 {
    path.iter()
        .fold(splitmix64(parent), |acc, &c| splitmix64(acc ^ c))
}

/// Sub-stream tags used when one trial seed feeds several generators.
pub(crate) mod stream {
    pub const MATRIX: u64 = 0x4d41_5452;
    pub const SIGNAL: u64 = 0x5349_474e;
    pub const NOISE: u64 = 0x4e4f_4953;
}
