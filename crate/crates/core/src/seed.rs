//! Stable seed derivation.
//!
//! Every random stream in the crate is keyed by a `u64` produced here, so a
//! run is a pure function of its master seed plus the labels that identify a
//! cell. The mixing functions are fixed (SplitMix64 finalizer, FNV-1a for
//! strings) and do not depend on `std`'s randomized hashers.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

/// SplitMix64 output function.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Combine a running seed with one more component.
pub fn mix(seed: u64, component: u64) -> u64 {
    splitmix64(seed ^ splitmix64(component))
}

pub fn hash_str(s: &str) -> u64 {
    s.bytes().fold(FNV_OFFSET, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(FNV_PRIME)
    })
}

/// Fractions such as noise levels are keyed at micro resolution so that
/// `0.1` parsed from different sources maps to the same stream.
pub fn fraction_key(fraction: f64) -> u64 {
    (fraction * 1e6).round() as u64
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
