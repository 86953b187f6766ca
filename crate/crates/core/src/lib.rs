//! Exact quantized feedforward networks.
//!
//! - [`rational`]: exact scalars used for every weight and exact-mode value.
//! - [`net`]: networks, evaluation, alphabet validation, and the JSON file format.
//! - [`lowering`]: semantics-preserving passes from `{0, ±1/2, ±1, 2}` weights to
//!   `{0, ±1/2}` and `{±1/4}` weights, unit-weight rescaling, and size accounting.
//! - [`indicator`]: depth-2 networks with `1_[0,1)` activation that approximate
//!   Hölder functions on a uniform hypercube partition.
//! - [`harness`]: target functions, sup-norm measurement, equivalence checks and
//!   CSV reports.

pub mod harness;
pub mod indicator;
pub mod lowering;
pub mod net;
pub mod rational;

pub use net::{ActivationKind, EvalMode, Network, WeightMatrix, WeightSet};
pub use rational::RationalScalar;
