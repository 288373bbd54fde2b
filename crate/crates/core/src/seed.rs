//! Seed derivation for independent, replayable runs.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The generator every run uses.
pub type RunRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> RunRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// SplitMix64 output function.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Child seed of `master` along a path of identifiers (cell key, run index,
/// ...). Depends only on its inputs, never on execution order.
pub fn derive_seed(master: u64, path: &[u64]) -> u64 {
    path.iter()
        .fold(mix64(master), |acc, &p| mix64(acc ^ mix64(p)))
}

/// 64-bit FNV-1a, a stable hash for textual cell keys.
pub fn stable_hash(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| {
        (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3)
    })
}
