//! Seeding.
//!
//! Every random choice in the crate is drawn from [`ChaCha8Rng`] seeded with
//! `seed_from_u64`. Sub-seeds for instances and restarts are derived with the
//! SplitMix64 finalizer so that they depend only on indices, never on the
//! order in which parallel work completes.

use rand::SeedableRng;
pub use rand_chacha::ChaCha8Rng;

/// Recorded in run manifests; changing the generator changes every result.
pub const RNG_IDENTITY: &str = "rand_chacha::ChaCha8Rng (seed_from_u64), sub-seeds via SplitMix64";

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Mixes a base seed with a sequence of stream identifiers.
pub fn derive_seed(base: u64, streams: &[u64]) -> u64 {
    streams
        .iter()
        .fold(splitmix64(base), |acc, &s| splitmix64(acc ^ splitmix64(s)))
}
