//! Measurement tools: target functions with Hölder data, sup-norm error on
//! dense grids, network equivalence checks, and CSV reports.

mod equiv;
mod report;
pub mod sample;
mod sup;
mod targets;

use thiserror::Error;

use crate::indicator::ApproxError;
use crate::net::NetError;

pub use equiv::{equivalence_check, equivalence_on_points, EquivalenceReport};
pub use report::{build_report, write_csv, ReportRow, CSV_HEADER};
pub use sup::{sup_error, sup_error_against, Approximant, ErrorReport};
pub use targets::{
    builtin_target, builtin_targets, check_holder, constant_value, TargetFunction, BUILTIN_NAMES,
    HOLDER_CHECK_PAIRS,
};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{what} mismatch: expected {expected}, found {found}")]
    Dimension {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("target `{name}` failed: {message}")]
    Target { name: String, message: String },
    #[error("Hölder check failed: {0}")]
    Holder(String),
    #[error(transparent)]
    Approx(#[from] ApproxError),
    #[error(transparent)]
    Net(#[from] NetError),
    #[error("csv output failed: {0}")]
    Csv(#[from] csv::Error),
}
