//! Seeded generators for networks and points on the unit cube.

use rand::Rng;

use crate::net::{Network, WeightMatrix, WeightSet};
use crate::rational::RationalScalar;

/// A random ReLU network with `depth` hidden layers of width `1..=max_width`, one
/// output, unit scale, and weights drawn uniformly from `alphabet` (dyadics with
/// denominator 4 in `[-2, 2]` for [`WeightSet::Unrestricted`]).
pub fn random_network<R: Rng>(
    rng: &mut R,
    d: usize,
    depth: usize,
    max_width: usize,
    alphabet: WeightSet,
) -> Network {
    let members = alphabet
        .members()
        .unwrap_or_else(|| (-8..=8).map(|n| RationalScalar::new(n, 4)).collect());
    let mut widths = vec![d + 1];
    widths.extend((0..depth).map(|_| rng.gen_range(1..=max_width.max(1))));
    widths.push(1);
    let matrices = widths
        .windows(2)
        .map(|w| WeightMatrix::from_fn(w[1], w[0], |_, _| members[rng.gen_range(0..members.len())].clone()))
        .collect();
    Network::relu(d, matrices).expect("generated widths chain")
}

/// All points of `{0, 1/(n-1), …, 1}^d`, first axis varying fastest.
pub fn uniform_grid(d: usize, n_per_axis: usize) -> Vec<Vec<RationalScalar>> {
    assert!(n_per_axis >= 2, "grid needs at least two points per axis");
    let steps = n_per_axis as i64 - 1;
    let total = n_per_axis.pow(d as u32);
    (0..total)
        .map(|mut idx| {
            (0..d)
                .map(|_| {
                    let i = idx % n_per_axis;
                    idx /= n_per_axis;
                    RationalScalar::new(i as i64, steps)
                })
                .collect()
        })
        .collect()
}

/// Coordinates `k/q` with `q` uniform in `1..=64` and `k` uniform in `0..=q`.
pub fn random_rational_point<R: Rng>(rng: &mut R, d: usize) -> Vec<RationalScalar> {
    (0..d)
        .map(|_| {
            let q = rng.gen_range(1..=64i64);
            RationalScalar::new(rng.gen_range(0..=q), q)
        })
        .collect()
}

/// Coordinates `k/2^bits`, exactly representable as `f64` for `bits <= 52`.
pub fn random_dyadic_point<R: Rng>(rng: &mut R, d: usize, bits: u32) -> Vec<RationalScalar> {
    let q = 1i64 << bits;
    (0..d).map(|_| RationalScalar::new(rng.gen_range(0..=q), q)).collect()
}
