use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::rational::RationalScalar;

use super::ApproxError;

/// Uniform partition of `[0,1]^d` into `(M+1)^d` cells.
///
/// Along each axis, cell `m < M` is `[m/(M+1), (m+1)/(M+1))` and cell `M` is
/// `[M/(M+1), 1]`. Cell coordinates `(m_1, …, m_d)` map to the index
/// `k = Σ m_i (M+1)^(i-1)`; the representative of a cell is its lower corner
/// `(m_1/(M+1), …, m_d/(M+1))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    d: usize,
    m: usize,
    cells: usize,
}

impl GridSpec {
    pub fn new(d: usize, m: usize) -> Result<Self, ApproxError> {
        if d == 0 || m == 0 {
            return Err(ApproxError::Domain(format!("grid needs d >= 1 and M >= 1, got d={d}, M={m}")));
        }
        let cells = (m + 1)
            .checked_pow(d as u32)
            .ok_or_else(|| ApproxError::Domain(format!("(M+1)^d overflows for d={d}, M={m}")))?;
        Ok(GridSpec { d, m, cells })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn resolution(&self) -> usize {
        self.m
    }

    pub fn cell_count(&self) -> usize {
        self.cells
    }

    /// Number of threshold units `dM` in the first hidden layer (excluding the constant unit).
    pub fn threshold_count(&self) -> usize {
        self.d * self.m
    }

    /// `j / (M+1)`.
    pub fn threshold(&self, j: usize) -> RationalScalar {
        RationalScalar::new(j as i64, self.m as i64 + 1)
    }

    fn check_len(&self, len: usize) -> Result<(), ApproxError> {
        if len != self.d {
            return Err(ApproxError::Dimension {
                expected: self.d,
                found: len,
            });
        }
        Ok(())
    }

    /// Per-axis cell coordinates of `x`, i.e. the number of thresholds `j/(M+1)`,
    /// `j = 1..=M`, that each `x_i` reaches.
    pub fn cell_coords_exact(&self, x: &[RationalScalar]) -> Result<Vec<usize>, ApproxError> {
        self.check_len(x.len())?;
        let scale = RationalScalar::from_integer(self.m as i64 + 1);
        let top = BigInt::from(self.m);
        x.iter()
            .enumerate()
            .map(|(axis, xi)| {
                if xi.is_negative() || *xi > RationalScalar::ONE {
                    return Err(ApproxError::OutsideCube {
                        axis,
                        value: xi.to_string(),
                    });
                }
                let m = (xi * &scale).floor().min(top.clone());
                Ok(m.to_usize().expect("bounded by M"))
            })
            .collect()
    }

    /// Float counterpart of [`GridSpec::cell_coords_exact`]: counts thresholds `t_j`
    /// (each `j/(M+1)` rounded to `f64`) with `x_i >= t_j`, matching the float
    /// evaluation of the threshold layer.
    pub fn cell_coords_f64(&self, x: &[f64]) -> Result<Vec<usize>, ApproxError> {
        self.check_len(x.len())?;
        let denom = (self.m + 1) as f64;
        x.iter()
            .enumerate()
            .map(|(axis, &xi)| {
                if !(0.0..=1.0).contains(&xi) {
                    return Err(ApproxError::OutsideCube {
                        axis,
                        value: xi.to_string(),
                    });
                }
                // Thresholds are increasing, so the count is a partition point.
                let (mut lo, mut hi) = (0usize, self.m);
                while lo < hi {
                    let mid = (lo + hi).div_ceil(2);
                    if xi >= mid as f64 / denom {
                        lo = mid;
                    } else {
                        hi = mid - 1;
                    }
                }
                Ok(lo)
            })
            .collect()
    }

    pub fn index_of(&self, coords: &[usize]) -> usize {
        coords
            .iter()
            .rev()
            .fold(0usize, |k, &m| k * (self.m + 1) + m)
    }

    pub fn coords_of(&self, mut k: usize) -> Vec<usize> {
        (0..self.d)
            .map(|_| {
                let m = k % (self.m + 1);
                k /= self.m + 1;
                m
            })
            .collect()
    }

    pub fn cell_index_exact(&self, x: &[RationalScalar]) -> Result<usize, ApproxError> {
        Ok(self.index_of(&self.cell_coords_exact(x)?))
    }

    pub fn cell_index_f64(&self, x: &[f64]) -> Result<usize, ApproxError> {
        Ok(self.index_of(&self.cell_coords_f64(x)?))
    }

    pub fn representative(&self, k: usize) -> Vec<RationalScalar> {
        self.coords_of(k).into_iter().map(|m| self.threshold(m)).collect()
    }
}
