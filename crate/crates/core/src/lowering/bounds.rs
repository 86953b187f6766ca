//! Size accounting for the base approximation theorem and its ternary and binary
//! restatements. Only the parenthetical error factor is reported; the constant in
//! front of it is not known.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::LoweringError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TheoremBoundParams {
    pub m: u32,
    #[serde(rename = "N")]
    pub n: u64,
    pub beta: f64,
    pub d: u32,
    #[serde(rename = "K")]
    pub k: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LoweredTernary {
    pub depth: u64,
    pub width: u64,
    pub sparsity: u128,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LoweredBinary {
    pub depth: u64,
    pub width: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremBoundReport {
    pub params: TheoremBoundParams,
    #[serde(rename = "L")]
    pub l: u64,
    /// `8 log2(N^(β+d) K e^d)` before rounding.
    pub log_term: f64,
    pub rounding: String,
    pub p_inf: u64,
    pub s_max: u128,
    pub error_factor: f64,
    pub lowered_ternary: LoweredTernary,
    pub lowered_binary: LoweredBinary,
}

/// `log2(N^(β+d) K e^d)`, expanded to avoid overflow.
fn log2_term(p: &TheoremBoundParams) -> f64 {
    (p.beta + p.d as f64) * (p.n as f64).log2() + p.k.log2() + p.d as f64 * std::f64::consts::LOG2_E
}

fn precondition(bound: &'static str, required: f64, found: f64) -> LoweringError {
    LoweringError::Precondition { bound, required, found }
}

impl TheoremBoundParams {
    pub fn check(&self) -> Result<(), LoweringError> {
        if self.m < 1 {
            return Err(precondition("m >= 1", 1.0, self.m as f64));
        }
        if self.d < 1 {
            return Err(precondition("d >= 1", 1.0, self.d as f64));
        }
        if !(self.beta.is_finite() && self.beta > 0.0) {
            return Err(precondition("beta > 0", 0.0, self.beta));
        }
        if !(self.k.is_finite() && self.k > 0.0) {
            return Err(precondition("K > 0", 0.0, self.k));
        }
        let d = self.d as f64;
        let n = self.n as f64;
        let smooth = (self.beta + 1.0).powf(d);
        if n < smooth.ceil() {
            return Err(precondition("N >= (beta+1)^d", smooth, n));
        }
        let lipschitz = (self.k + 1.0) * d.exp();
        if n < lipschitz.ceil() {
            return Err(precondition("N >= (K+1)e^d", lipschitz, n));
        }
        Ok(())
    }
}

pub fn theorem_bounds(p: &TheoremBoundParams) -> Result<TheoremBoundReport, LoweringError> {
    p.check()?;
    let d = p.d as f64;
    let t = log2_term(p);
    let log_term = 8.0 * t;

    let depth_log = d.max(p.beta).log2().ceil();
    let l = 16.0 + 2.0 * (p.m as f64 + 5.0) * (1.0 + depth_log) + log_term.ceil();
    if l < 1.0 {
        return Err(precondition("L >= 1", 1.0, l));
    }
    let l = l as u64;

    let first = (2.0 * (1.0 + d + (2.0 * p.beta).powf(d) * p.n as f64 + 2.0 * t)).ceil();
    let second = 2f64.powf(d) * 6.0 * (d + p.beta.ceil()) * p.n as f64;
    let p_inf = first.max(second) as u64;

    // 141 (d+β+1)^(3+d) L |p|∞, floored in exact arithmetic over the float β.
    let base = BigRational::from_integer(BigInt::from(p.d + 1))
        + BigRational::from_float(p.beta).expect("finite beta");
    let s_exact = num_traits::pow(base, (3 + p.d) as usize)
        * BigRational::from_integer(BigInt::from(141u64) * BigInt::from(l) * BigInt::from(p_inf));
    let s_max = s_exact
        .floor()
        .to_integer()
        .to_u128()
        .ok_or(LoweringError::Overflow("sparsity bound"))?;

    let error_factor = p.n as f64 * 2f64.powi(-(p.m as i32)) + (p.n as f64).powf(-p.beta / d);

    let ternary_sparsity = s_max
        .checked_mul(16)
        .and_then(|s| s.checked_add(20 * (p.d as u128 + 1)))
        .ok_or(LoweringError::Overflow("ternary sparsity bound"))?;

    Ok(TheoremBoundReport {
        params: *p,
        l,
        log_term,
        rounding: "L rounds 8*log2(N^(beta+d) K e^d) up; |p|inf rounds its first branch up; s_max rounds down".into(),
        p_inf,
        s_max,
        error_factor,
        lowered_ternary: LoweredTernary {
            depth: l + 2,
            width: 4 * p_inf,
            sparsity: ternary_sparsity,
        },
        lowered_binary: LoweredBinary {
            depth: l + 5,
            width: 32 * p_inf,
        },
    })
}
