//! Counter-based random stream derivation.
//!
//! Every random draw in the crate comes from a stream keyed by
//! `(seed, purpose tag, index)`. Streams are derived by SplitMix64 mixing, so
//! any draw can be reproduced in isolation regardless of evaluation order or
//! thread count. The streams themselves are ChaCha12, which has a stable
//! output sequence across platforms.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

/// Purpose tags separating independent substreams of one seed.
pub mod tag {
    pub const CODEBOOK: u64 = 0x636f_6465_626f_6f6b; // "codebook"
    pub const ACTIVITY: u64 = 0x6163_7469_7669_7479; // "activity"
    pub const PHASE: u64 = 0x0000_0000_7068_6173; // "phas"
    pub const NOISE: u64 = 0x0000_0000_6e6f_6973; // "nois"
    pub const TRIAL: u64 = 0x0000_0000_7472_6961; // "tria"
}

#[inline]
fn splitmix(state: u64) -> u64 {
    let mut z = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Mixes a seed with a sequence of key words into a new 64-bit seed.
pub fn derive(seed: u64, words: &[u64]) -> u64 {
    let mut acc = splitmix(seed);
    for &w in words {
        acc = splitmix(acc ^ splitmix(w));
    }
    acc
}

/// Returns the ChaCha12 stream for `(seed, tag, index)`.
pub fn stream(seed: u64, tag: u64, index: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(derive(seed, &[tag, index]))
}
