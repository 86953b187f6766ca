//! Depth-2 approximators with the binary activation `1_[0,1)`.
//!
//! The first layer `W` compares every coordinate with the thresholds
//! `j/(M+1)`; the second layer `V` turns the resulting code into a one-hot
//! vector selecting the grid cell; the readout `U_f` returns `f` at the cell's
//! representative. For `f` with `|f(x) - f(y)| <= K |x - y|_∞^β` the sup-norm
//! error on `[0,1]^d` is at most `K/(M+1)^β`.
//!
//! The selector has `(M+1)^d (dM+1)` entries, so large grids are evaluated
//! through [`CellReadout`] without materializing it.

mod bundle;
mod continuous;
pub mod format;
mod grid;
mod matrices;

use thiserror::Error;

use crate::net::NetError;

pub use bundle::{
    build_approximator, build_approximator_at, build_readout, choose_resolution, ApproxCertificate,
    ApproximatorBundle, BuildOptions, CellReadout, CertificateBasis, Evaluator, HolderFunctionSpec,
    Materialize,
};
pub use continuous::{approximate_continuous, sampled_cell_modulus, ContinuousOptions};
pub use grid::GridSpec;
pub use matrices::{
    build_selector_matrix, build_threshold_matrix, selector_entry_count, threshold_column,
    DEFAULT_SELECTOR_CAP,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ApproxError {
    #[error("{0}")]
    Domain(String),
    #[error("coordinate {axis} = {value} lies outside [0, 1]")]
    OutsideCube { axis: usize, value: String },
    #[error("expected {expected} values, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("selector needs {entries} entries, above the cap of {cap}; use implicit evaluation or raise the cap")]
    Capacity { entries: u128, cap: u128 },
    #[error("evaluator failed at cell {cell}: {message}")]
    Evaluator { cell: usize, message: String },
    #[error("no resolution up to M = {cap} meets epsilon; pass an explicit M")]
    ResolutionCap { cap: usize },
    #[error("not an indicator approximator: {0}")]
    NotABundle(String),
    #[error(transparent)]
    Net(#[from] NetError),
}
