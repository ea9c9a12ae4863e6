//! Deterministic per-run random streams.
//!
//! A run's seed is `mix(master ^ mix(run + 1))`, where `mix` is the
//! SplitMix64 finalizer. Sub-streams of a run (the hidden parameter draw,
//! the reward noise) are split off the run seed the same way with a fixed
//! tag, so every stream depends only on `(master, run, tag)`.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Tag of the stream used to draw the hidden parameter of a run.
pub const THETA_STREAM: u64 = 0;
/// Tag of the reward-noise stream. All policies of one run share it.
pub const NOISE_STREAM: u64 = 1;

pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn split(seed: u64, index: u64) -> u64 {
    splitmix64(seed ^ splitmix64(index.wrapping_add(1)))
}

pub fn run_seed(master: u64, run: u64) -> u64 {
    split(master, run)
}

pub fn stream(master: u64, run: u64, tag: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(split(run_seed(master, run), tag))
}
