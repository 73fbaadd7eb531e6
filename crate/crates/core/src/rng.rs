//! Counter-based random streams.
//!
//! Every random quantity in a simulation is drawn from a ChaCha8 stream whose
//! key is `(master seed, purpose, index0, index1)`. Streams are independent of
//! execution order, so trials can run in any order or in parallel and still
//! produce identical numbers.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// What a stream is used for. Part of the stream key.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[repr(u64)]
pub enum Purpose {
    Info = 1,
    Noise = 2,
    Fill = 3,
    Tie = 4,
    Decision = 5,
    Test = 6,
}

/// Opens the stream keyed by `(seed, purpose, index)`.
pub fn stream(seed: u64, purpose: Purpose, index: [u64; 2]) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[0..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&(purpose as u64).to_le_bytes());
    key[16..24].copy_from_slice(&index[0].to_le_bytes());
    key[24..32].copy_from_slice(&index[1].to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

/// Packs an iteration counter and a check-node id into one stream index.
pub fn pack(hi: u64, lo: u64) -> u64 {
    (hi << 32) | (lo & 0xffff_ffff)
}

/// SplitMix64 finalizer; used for stateless per-slot coin flips.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
