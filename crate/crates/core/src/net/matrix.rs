use crate::rational::RationalScalar;

use super::NetError;

/// Dense row-major matrix of exact weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<RationalScalar>,
}

impl WeightMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<RationalScalar>) -> Result<Self, NetError> {
        if rows == 0 || cols == 0 {
            return Err(NetError::EmptyMatrix { rows, cols });
        }
        if entries.len() != rows * cols {
            return Err(NetError::EntryCount {
                rows,
                cols,
                found: entries.len(),
            });
        }
        Ok(WeightMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        WeightMatrix {
            rows,
            cols,
            entries: vec![RationalScalar::ZERO; rows * cols],
        }
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> RationalScalar,
    ) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        WeightMatrix { rows, cols, entries }
    }

    /// Convenience constructor from integer pairs `(num, den)`.
    pub fn from_pairs(rows: &[&[(i64, i64)]]) -> Result<Self, NetError> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::new();
        for row in rows {
            if row.len() != cols {
                return Err(NetError::EntryCount {
                    rows: rows.len(),
                    cols,
                    found: row.len(),
                });
            }
            entries.extend(row.iter().map(|&(n, d)| RationalScalar::new(n, d)));
        }
        WeightMatrix::new(rows.len(), cols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[RationalScalar] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> &RationalScalar {
        &self.entries[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: RationalScalar) {
        self.entries[row * self.cols + col] = value;
    }

    pub fn row(&self, row: usize) -> &[RationalScalar] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.iter().filter(|w| !w.is_zero()).count()
    }

    pub fn map(&self, f: impl Fn(&RationalScalar) -> RationalScalar) -> Self {
        WeightMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// `self · v` in exact arithmetic. Zero weights and zero inputs are skipped.
    pub fn mul_vec_exact(&self, v: &[RationalScalar]) -> Vec<RationalScalar> {
        debug_assert_eq!(v.len(), self.cols);
        let live: Vec<usize> = (0..self.cols).filter(|&c| !v[c].is_zero()).collect();
        (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let mut acc = RationalScalar::ZERO;
                for &c in &live {
                    let w = &row[c];
                    if !w.is_zero() {
                        acc += &(w * &v[c]);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.entries.iter().map(RationalScalar::to_f64).collect()
    }
}
