//! Seed derivation.
//!
//! Every random stream is addressed by a master seed and a path of integers
//! (experiment domain, trial index, draw index, ...). The path is folded into
//! a 64-bit seed with the SplitMix64 finalizer and the result seeds a
//! ChaCha8 generator. Streams with different paths are independent for all
//! practical purposes and can be evaluated in any order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

/// Domain tags used as the first path element.
pub mod domain {
    pub const DISK: u64 = 0x01;
    pub const EXTERIOR: u64 = 0x02;
    pub const FADING: u64 = 0x03;
    pub const CROSSING: u64 = 0x10;
    pub const VACANT_LOOP: u64 = 0x11;
    pub const ORIGIN_BOX: u64 = 0x12;
    pub const CAMPBELL: u64 = 0x20;
}

#[inline]
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn derive_seed(master: u64, path: &[u64]) -> u64 {
    path.iter()
        .fold(splitmix64(master), |acc, &p| splitmix64(acc ^ splitmix64(p)))
}

pub fn stream(master: u64, path: &[u64]) -> StreamRng {
    StreamRng::seed_from_u64(derive_seed(master, path))
}
