use serde::{Deserialize, Serialize};

use crate::net::{Network, WeightSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LoweringPass {
    Ternary,
    Binary,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetSummary {
    pub depth: usize,
    pub widths: Vec<usize>,
    pub width_max: usize,
    pub sparsity: usize,
}

impl NetSummary {
    pub fn of(net: &Network) -> Self {
        NetSummary {
            depth: net.depth(),
            widths: net.widths(),
            width_max: net.width_max(),
            sparsity: net.sparsity().total_nonzero,
        }
    }
}

/// Size guarantees of a pass: the depth is exact, width and sparsity are upper bounds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoweringBounds {
    pub depth: usize,
    pub width_max: usize,
    pub sparsity: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoweringCertificate {
    pub pass: bool,
    pub lowering: LoweringPass,
    pub weight_set_out: WeightSet,
    pub alphabet_valid: bool,
    pub source: NetSummary,
    pub target: NetSummary,
    pub bounds: LoweringBounds,
}

impl LoweringCertificate {
    pub(crate) fn new(
        lowering: LoweringPass,
        source: NetSummary,
        lowered: &Network,
        bounds: LoweringBounds,
        weight_set_out: WeightSet,
    ) -> Self {
        let target = NetSummary::of(lowered);
        let alphabet_valid = lowered.validate(weight_set_out).pass;
        let pass = alphabet_valid
            && target.depth == bounds.depth
            && target.width_max <= bounds.width_max
            && bounds.sparsity.is_none_or(|s| target.sparsity <= s);
        LoweringCertificate {
            pass,
            lowering,
            weight_set_out,
            alphabet_valid,
            source,
            target,
            bounds,
        }
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }
}
