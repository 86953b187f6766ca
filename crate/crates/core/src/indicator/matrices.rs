use crate::net::WeightMatrix;
use crate::rational::RationalScalar;

use super::{ApproxError, GridSpec};

/// Default ceiling on selector entries before callers must use implicit evaluation.
pub const DEFAULT_SELECTOR_CAP: u128 = 100_000_000;

/// Column of threshold unit `(axis, j)`, `j = 1..=M`, in axis-major order; column
/// 0 is the constant unit.
pub fn threshold_column(grid: &GridSpec, axis: usize, j: usize) -> usize {
    1 + axis * grid.resolution() + (j - 1)
}

/// `W` with `W·(1, x) = (0, x_1 - 1/(M+1), …, x_1 - M/(M+1), …, x_d - M/(M+1))`.
///
/// Under `1_[0,1)` the first unit is constantly 1 and unit `(i, j)` is 1 exactly
/// when `x_i >= j/(M+1)` (on the cube `x_i - j/(M+1) < 1`).
pub fn build_threshold_matrix(grid: &GridSpec) -> WeightMatrix {
    let m = grid.resolution();
    let mut w = WeightMatrix::zeros(grid.threshold_count() + 1, grid.d() + 1);
    for axis in 0..grid.d() {
        for j in 1..=m {
            let row = threshold_column(grid, axis, j);
            w.set(row, 0, -grid.threshold(j));
            w.set(row, axis + 1, RationalScalar::ONE);
        }
    }
    w
}

pub fn selector_entry_count(grid: &GridSpec) -> u128 {
    grid.cell_count() as u128 * (grid.threshold_count() as u128 + 1)
}

/// `V` with `(V·code)_r = r - k` for the threshold code of a point in cell `k`:
/// row `r` has `r` in the constant column and `-(M+1)^i` across axis `i`'s block.
pub fn build_selector_matrix(grid: &GridSpec, cap: u128) -> Result<WeightMatrix, ApproxError> {
    let entries = selector_entry_count(grid);
    if entries > cap {
        return Err(ApproxError::Capacity { entries, cap });
    }
    let m = grid.resolution();
    let strides: Vec<RationalScalar> = (0..grid.d())
        .map(|i| RationalScalar::from_integer(-((m as i64 + 1).pow(i as u32))))
        .collect();
    Ok(WeightMatrix::from_fn(grid.cell_count(), grid.threshold_count() + 1, |r, c| {
        if c == 0 {
            RationalScalar::from_integer(r as i64)
        } else {
            strides[(c - 1) / m].clone()
        }
    }))
}
