//! Seeded random streams and stable seed derivation.
//!
//! Every randomized operation in this crate takes a `u64` seed and draws from
//! a ChaCha stream, so results are reproducible across platforms and runs.
//! Batch runs derive one sub-seed per (tag, index) cell, making each cell
//! reproducible in isolation regardless of execution order.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The RNG used by all seeded operations.
pub type SeededRng = ChaCha8Rng;

/// Builds the crate-wide RNG stream for a seed.
pub fn seeded_rng(seed: u64) -> SeededRng {
    SeededRng::seed_from_u64(seed)
}

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

fn fnv1a(mut hash: u64, bytes: &[u8]) -> u64 {
    for &b in bytes {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(FNV_PRIME);
    }
    hash
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Derives a per-cell seed from a base seed, a textual tag and an index.
///
/// FNV-1a over the inputs followed by a splitmix64 finalizer; fixed constants,
/// so the mapping never changes across builds or platforms.
pub fn derive_seed(base: u64, tag: &str, index: u64) -> u64 {
    let mut h = fnv1a(FNV_OFFSET, &base.to_le_bytes());
    h = fnv1a(h, tag.as_bytes());
    h = fnv1a(h, &index.to_le_bytes());
    splitmix64(h)
}

/// FNV-1a over a byte stream, exposed for content fingerprints.
pub(crate) fn fnv1a_stream(bytes: impl IntoIterator<Item = u8>) -> u64 {
    let mut hash = FNV_OFFSET;
    for b in bytes {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(FNV_PRIME);
    }
    hash
}
