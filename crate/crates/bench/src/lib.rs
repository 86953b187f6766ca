//! Shared inputs for the criterion benches.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qlower_core::harness::sample::{random_network, random_rational_point};
use qlower_core::{Network, RationalScalar, WeightSet};

/// A seeded baseA network with `depth` hidden layers of width at most `width`.
pub fn base_a_network(d: usize, depth: usize, width: usize, seed: u64) -> Network {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_network(&mut rng, d, depth, width, WeightSet::BaseA)
}

/// `n` seeded rational points of `[0, 1]^d`.
pub fn points(d: usize, n: usize, seed: u64) -> Vec<Vec<RationalScalar>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| random_rational_point(&mut rng, d)).collect()
}
