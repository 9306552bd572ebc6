//! Seed derivation for reproducible parallel trials.
//!
//! Each top-level trial gets its own child seed from (master seed, trial
//! index), so trial results do not depend on scheduling order.

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E3779B97F4A7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D049BB133111EB);
    x ^ (x >> 31)
}

/// Derives the seed for trial `index` of a run with the given master seed.
pub fn child_seed(master: u64, index: u64) -> u64 {
    splitmix64(master ^ splitmix64(index))
}
