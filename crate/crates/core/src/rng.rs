//! Addressable randomness: every coin is a pure function of
//! `(seed, run, stage, pair)` through the SplitMix64 finalizer, so a single
//! pair decision can be replayed without replaying the whole run.

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 output for state `z`.
pub fn splitmix64(z: u64) -> u64 {
    let mut z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Folds the four coordinates through successive SplitMix64 rounds.
pub fn mix(seed: u64, run: u64, stage: u64, pair: u64) -> u64 {
    let mut h = splitmix64(seed);
    for x in [run, stage, pair] {
        h = splitmix64(h ^ x);
    }
    h
}

/// A fair coin for pair `pair` at `stage` of run `run`.
pub fn coin(seed: u64, run: u64, stage: u64, pair: u64) -> bool {
    mix(seed, run, stage, pair) & 1 == 1
}
