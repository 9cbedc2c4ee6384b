//! Deterministic random streams.
//!
//! Every stochastic operation takes its generator explicitly. The generator
//! is ChaCha8 ([`SimRng`]) seeded through `seed_from_u64`, whose output is
//! fixed across platforms and releases of `rand_chacha`. Independent
//! substreams (one per Monte-Carlo run) are derived with [`mix_seed`].

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The simulation generator.
pub type SimRng = ChaCha8Rng;

/// Weyl increment used by SplitMix64 (2^64 / golden ratio).
pub const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer (Stafford variant 13).
pub fn splitmix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of substream `index` under a base seed:
/// `splitmix64(seed + (index + 1) · GOLDEN_GAMMA)` with wrapping arithmetic.
pub fn mix_seed(seed: u64, index: u64) -> u64 {
    splitmix64(seed.wrapping_add(index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)))
}

pub fn rng_from_seed(seed: u64) -> SimRng {
    SimRng::seed_from_u64(seed)
}
