//! Seeded randomness.
//!
//! Every random draw comes from a ChaCha8 stream keyed by a 64-bit seed.
//! Derived seeds (per trial, per purpose) are produced with the SplitMix64
//! finalizer applied to `master ^ (stream + 1) · GOLDEN`, so serial and
//! parallel drivers see the same streams.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SimRng = ChaCha8Rng;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 output function.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for sub-stream `stream` of `master`.
pub fn derive_seed(master: u64, stream: u64) -> u64 {
    splitmix64(master ^ stream.wrapping_add(1).wrapping_mul(GOLDEN))
}

pub fn rng_from_seed(seed: u64) -> SimRng {
    ChaCha8Rng::seed_from_u64(seed)
}

// stream tags for the different consumers of a single seed
pub(crate) const STREAM_DECOMPOSITION: u64 = 0xDEC0;
pub(crate) const STREAM_CHANNEL: u64 = 0xC4A7;
pub(crate) const STREAM_CODE: u64 = 0xC0DE;
