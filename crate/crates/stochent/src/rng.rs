//! Deterministic, splittable seeding.
//!
//! Every sampler in the crate takes an explicit seed (or a generator derived
//! from one), so property suites and fuzz findings replay exactly. Sub-streams
//! are derived by mixing the root seed with a salt path through splitmix64;
//! distinct paths give independent-looking streams.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(GOLDEN);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derive a sub-seed from a root seed and a salt path.
pub fn derive_seed(seed: u64, salts: &[u64]) -> u64 {
    let mut h = splitmix64(seed);
    for &s in salts {
        h = splitmix64(h ^ s.wrapping_mul(GOLDEN));
    }
    h
}

/// Counter-based generator for a (seed, path) pair.
pub fn rng_from(seed: u64, salts: &[u64]) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(seed, salts))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sub_seeds_are_stable_and_distinct() {
        let a = derive_seed(42, &[1, 2, 3]);
        let b = derive_seed(42, &[1, 2, 3]);
        let c = derive_seed(42, &[1, 2, 4]);
        let d = derive_seed(43, &[1, 2, 3]);
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_ne!(a, d);
    }

    #[test]
    fn same_seed_same_stream() {
        use rand::Rng;
        let mut r1 = rng_from(7, &[0]);
        let mut r2 = rng_from(7, &[0]);
        for _ in 0..16 {
            let x: f64 = r1.gen();
            let y: f64 = r2.gen();
            assert_eq!(x, y);
        }
    }
}
