//! Weight-alphabet lowering passes.
//!
//! [`ternarize`] rewrites a ReLU network with weights in `{0, ±1/2, ±1, 2}` into
//! one with weights in `{0, ±1/2}`; [`binarize`] rewrites a `{0, ±1/2}` network
//! into one with weights in `{±1/4}`. Both compute the same function on
//! `[0,1]^d` exactly. [`to_unit_weights`] factors the weight magnitude into the
//! output scale.

mod bounds;
mod certificate;
mod decompose;
mod passes;
mod prefix;
mod rescale;

use thiserror::Error;

use crate::net::{ActivationKind, NetError, Offender, WeightSet};
use crate::rational::RationalScalar;

pub use bounds::{theorem_bounds, LoweredBinary, LoweredTernary, TheoremBoundParams, TheoremBoundReport};
pub use certificate::{LoweringBounds, LoweringCertificate, LoweringPass, NetSummary};
pub use decompose::{decompose_binary, decompose_ternary};
pub use passes::{binarize, ternarize};
pub use prefix::{binary_prefix, ternary_prefix, PrefixFragment};
pub use rescale::{to_unit_weights, to_unit_weights_scaled_activation};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LoweringError {
    #[error("weight {value} is not in {alphabet}")]
    WeightOutsideAlphabet { value: RationalScalar, alphabet: WeightSet },
    #[error("weight {} at matrix {}, row {}, column {} is not in {expected}",
        offender.value, offender.layer, offender.row, offender.col)]
    NotInAlphabet { expected: WeightSet, offender: Offender },
    #[error("lowering needs relu activation, found {0}")]
    Activation(ActivationKind),
    #[error("lowering needs output scale 1, found {0}; rescale first")]
    OutputScale(RationalScalar),
    #[error("network weights are neither all in ternary_half nor all in binary_quarter")]
    NotHalfOrQuarter,
    #[error("precondition {bound} violated: need {required}, found {found}")]
    Precondition {
        bound: &'static str,
        required: f64,
        found: f64,
    },
    #[error("{0} overflows 128 bits")]
    Overflow(&'static str),
    #[error(transparent)]
    Net(#[from] NetError),
}
