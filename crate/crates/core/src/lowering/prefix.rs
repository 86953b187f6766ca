//! Input-duplication gadgets prepended by the lowering passes.

use crate::net::WeightMatrix;
use crate::rational::RationalScalar;

/// A stack of ReLU hidden layers with no readout. Applied to `(1, x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixFragment {
    input_dim: usize,
    layers: Vec<WeightMatrix>,
}

impl PrefixFragment {
    pub fn input_dim(&self) -> usize {
        self.input_dim
    }

    pub fn layers(&self) -> &[WeightMatrix] {
        &self.layers
    }

    pub fn into_layers(self) -> Vec<WeightMatrix> {
        self.layers
    }

    pub fn hidden_layers(&self) -> usize {
        self.layers.len()
    }

    pub fn output_dim(&self) -> usize {
        self.layers.last().map_or(self.input_dim + 1, WeightMatrix::rows)
    }

    pub fn sparsity(&self) -> usize {
        self.layers.iter().map(WeightMatrix::nonzero_count).sum()
    }

    /// Applies every layer followed by ReLU to `(1, x)`. Panics on a length mismatch.
    pub fn apply_exact(&self, x: &[RationalScalar]) -> Vec<RationalScalar> {
        assert_eq!(x.len(), self.input_dim, "input dimension mismatch");
        let mut h: Vec<RationalScalar> = std::iter::once(RationalScalar::ONE)
            .chain(x.iter().cloned())
            .collect();
        for m in &self.layers {
            h = m
                .mul_vec_exact(&h)
                .into_iter()
                .map(|z| if z.is_negative() { RationalScalar::ZERO } else { z })
                .collect();
        }
        h
    }
}

/// Two `{0, 1/2}` layers mapping `(1, x)` to `(1,1,1,1, x_1×4, …, x_d×4)` on the cube.
///
/// Layer 1 fans every coordinate `c` out to four units holding `c/2`; layer 2 sums
/// the four halves with weight `1/2` into each of four outputs. `20(d+1)` nonzeros.
pub fn ternary_prefix(d: usize) -> PrefixFragment {
    assert!(d >= 1, "input dimension must be positive");
    let n = d + 1;
    let half = RationalScalar::new(1, 2);
    let fan = WeightMatrix::from_fn(4 * n, n, |r, c| {
        if r / 4 == c {
            half.clone()
        } else {
            RationalScalar::ZERO
        }
    });
    let gather = WeightMatrix::from_fn(4 * n, 4 * n, |r, c| {
        if r / 4 == c / 4 {
            half.clone()
        } else {
            RationalScalar::ZERO
        }
    });
    PrefixFragment {
        input_dim: d,
        layers: vec![fan, gather],
    }
}

/// Three `{±1/4}` layers mapping `(1, x)` to `(1, 1, x_1, x_1, …, x_d, x_d)` on the cube.
///
/// With `y_0 = (1 + Σx_i)/4` and `y_k = (1 - x_k + Σ_{i≠k} x_i)/4`:
/// layer 1 emits eight copies of each `y_i`; layer 2 emits eight copies of `2y_0`
/// and four of each `x_k = (8y_0 - 8y_k)/4`; layer 3 emits `1 = (16y_0 - 4Σx_i)/4`
/// twice and each `x_k` twice. Unused blocks are cancelled by pairing `+1/4` with
/// `-1/4` over equal coordinates, so every entry is nonzero.
pub fn binary_prefix(d: usize) -> PrefixFragment {
    assert!(d >= 1, "input dimension must be positive");
    let plus = RationalScalar::new(1, 4);
    let minus = RationalScalar::new(-1, 4);
    let sign = |positive: bool| if positive { plus.clone() } else { minus.clone() };

    // Layer 1: unit 8i + t computes y_i. Column 0 is the constant.
    let l1 = WeightMatrix::from_fn(8 * (d + 1), d + 1, |r, c| {
        let i = r / 8;
        sign(i == 0 || c != i)
    });

    // Layer 2 outputs: rows 0..8 are 2y_0, then block k (1-based) of four rows is x_k.
    // Inputs: block i of eight columns holds copies of y_i.
    let l2 = WeightMatrix::from_fn(8 + 4 * d, 8 * (d + 1), |r, c| {
        let (block, slot) = (c / 8, c % 8);
        let cancel = slot < 4;
        if r < 8 {
            if block == 0 { plus.clone() } else { sign(cancel) }
        } else {
            let k = (r - 8) / 4 + 1;
            if block == 0 {
                plus.clone()
            } else if block == k {
                minus.clone()
            } else {
                sign(cancel)
            }
        }
    });

    // Layer 3 outputs: rows 2c, 2c+1 carry coordinate c of (1, x).
    // Inputs: columns 0..8 hold 2y_0, then four columns per x_k.
    let l3 = WeightMatrix::from_fn(2 * (d + 1), 8 + 4 * d, |r, c| {
        let coord = r / 2;
        let (block, slot) = if c < 8 { (0, c) } else { ((c - 8) / 4 + 1, (c - 8) % 4) };
        if coord == 0 {
            sign(block == 0)
        } else if block == coord {
            plus.clone()
        } else if block == 0 {
            sign(slot < 4)
        } else {
            sign(slot < 2)
        }
    });

    PrefixFragment {
        input_dim: d,
        layers: vec![l1, l2, l3],
    }
}
