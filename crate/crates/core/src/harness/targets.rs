use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::indicator::{Evaluator, HolderFunctionSpec};
use crate::rational::RationalScalar;

use super::sample::random_rational_point;
use super::HarnessError;

/// Pairs sampled by the registration spot-check.
pub const HOLDER_CHECK_PAIRS: usize = 10_000;

/// Relative slack for β < 1, where the right-hand side is evaluated in floating point.
const FLOAT_SLACK: f64 = 1e-12;

/// A named target with Hölder data that passed the registration spot-check.
#[derive(Clone)]
pub struct TargetFunction {
    pub name: String,
    pub spec: HolderFunctionSpec,
    /// Where `(β, K, F)` come from.
    pub provenance: String,
}

impl fmt::Debug for TargetFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TargetFunction")
            .field("name", &self.name)
            .field("spec", &self.spec)
            .field("provenance", &self.provenance)
            .finish()
    }
}

impl TargetFunction {
    /// Registers a target after spot-checking `|f(x) - f(y)| <= K|x - y|_∞^β` and
    /// `|f| <= F` on [`HOLDER_CHECK_PAIRS`] seeded pairs. Half of the pairs are
    /// independent; the other half are close (offsets of size `2^-j`).
    pub fn register(
        name: impl Into<String>,
        spec: HolderFunctionSpec,
        provenance: impl Into<String>,
        seed: u64,
    ) -> Result<Self, HarnessError> {
        let name = name.into();
        check_holder(&name, &spec, HOLDER_CHECK_PAIRS, seed)?;
        Ok(TargetFunction {
            name,
            spec,
            provenance: provenance.into(),
        })
    }

    pub fn d(&self) -> usize {
        self.spec.d
    }

    pub fn eval(&self, x: &[RationalScalar]) -> Result<RationalScalar, HarnessError> {
        self.spec.eval(x).map_err(|message| HarnessError::Target {
            name: self.name.clone(),
            message,
        })
    }
}

fn sup_distance(x: &[RationalScalar], y: &[RationalScalar]) -> RationalScalar {
    x.iter()
        .zip(y)
        .map(|(a, b)| (a - b).abs())
        .max()
        .unwrap_or(RationalScalar::ZERO)
}

fn nearby<R: Rng>(rng: &mut R, x: &[RationalScalar]) -> Vec<RationalScalar> {
    let scale = 1i64 << rng.gen_range(4..=20);
    x.iter()
        .map(|xi| {
            let step = RationalScalar::new(rng.gen_range(-4..=4), scale);
            (xi + &step).clamp(RationalScalar::ZERO, RationalScalar::ONE)
        })
        .collect()
}

pub fn check_holder(name: &str, spec: &HolderFunctionSpec, pairs: usize, seed: u64) -> Result<(), HarnessError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k_exact = RationalScalar::from_f64_exact(spec.k)
        .ok_or_else(|| HarnessError::Holder(format!("{name}: K is not finite")))?;
    let f_exact = RationalScalar::from_f64_exact(spec.f_bound)
        .ok_or_else(|| HarnessError::Holder(format!("{name}: F is not finite")))?;
    let eval = |x: &[RationalScalar]| {
        spec.eval(x).map_err(|message| HarnessError::Target {
            name: name.to_string(),
            message,
        })
    };
    for i in 0..pairs {
        let x = random_rational_point(&mut rng, spec.d);
        let y = if i % 2 == 0 {
            random_rational_point(&mut rng, spec.d)
        } else {
            nearby(&mut rng, &x)
        };
        let (fx, fy) = (eval(&x)?, eval(&y)?);
        for v in [&fx, &fy] {
            if v.abs() > f_exact {
                return Err(HarnessError::Holder(format!("{name}: |f| = {} exceeds F = {}", v.abs(), spec.f_bound)));
            }
        }
        let lhs = (&fx - &fy).abs();
        let dist = sup_distance(&x, &y);
        let ok = if spec.beta == 1.0 {
            lhs <= &k_exact * &dist
        } else {
            lhs.to_f64() <= spec.k * dist.to_f64().powf(spec.beta) * (1.0 + FLOAT_SLACK)
        };
        if !ok {
            return Err(HarnessError::Holder(format!(
                "{name}: |f(x) - f(y)| = {lhs} exceeds K|x-y|^beta at x = {x:?}, y = {y:?}"
            )));
        }
    }
    Ok(())
}

fn evaluator(f: impl Fn(&[RationalScalar]) -> RationalScalar + Send + Sync + 'static) -> Evaluator {
    Arc::new(move |x: &[RationalScalar]| Ok(f(x)))
}

fn max_coordinate(x: &[RationalScalar]) -> RationalScalar {
    x.iter().max().cloned().unwrap_or(RationalScalar::ZERO)
}

/// `sqrt` of an exact value, rounded to `f64` and converted back exactly.
fn sqrt_rounded(v: &RationalScalar) -> RationalScalar {
    RationalScalar::from_f64_exact(v.to_f64().sqrt()).unwrap_or(RationalScalar::ZERO)
}

/// Value of the built-in constant target.
pub fn constant_value() -> RationalScalar {
    RationalScalar::new(1, 2)
}

/// Names accepted by [`builtin_target`].
pub const BUILTIN_NAMES: [&str; 4] = ["constant", "mean", "max", "root"];

pub fn builtin_target(name: &str, d: usize) -> Result<TargetFunction, HarnessError> {
    if d == 0 {
        return Err(HarnessError::Holder("d must be positive".into()));
    }
    let spec = |beta, k, f, ev| {
        HolderFunctionSpec::new(d, beta, k, f, ev).map_err(HarnessError::from)
    };
    let inv_d = RationalScalar::new(1, d as i64);
    let (s, provenance) = match name {
        "constant" => (
            spec(1.0, 1.0, 0.5, evaluator(|_| constant_value()))?,
            "f = 1/2: any K works, F = |c|",
        ),
        "mean" => (
            spec(1.0, 1.0, 1.0, evaluator(move |x| &x.iter().sum::<RationalScalar>() * &inv_d))?,
            "(1/d) sum x_i: Lipschitz 1 in the sup norm, values in [0, 1]",
        ),
        "max" => (
            spec(1.0, 1.0, 1.0, evaluator(max_coordinate))?,
            "max_i x_i: |max x - max y| <= |x - y|_inf, values in [0, 1]",
        ),
        "root" => (
            spec(0.5, 1.0, 1.0, evaluator(|x| sqrt_rounded(&max_coordinate(x))))?,
            "sqrt(|x|_inf): |sqrt a - sqrt b| <= sqrt|a - b|, values in [0, 1]",
        ),
        other => {
            return Err(HarnessError::Holder(format!(
                "unknown target `{other}` (expected one of {})",
                BUILTIN_NAMES.join(", ")
            )))
        }
    };
    // Seed per target name so registration is reproducible.
    let seed = name.bytes().fold(d as u64, |h, b| h.wrapping_mul(31).wrapping_add(b as u64));
    TargetFunction::register(name, s, provenance, seed)
}

/// Constant, mean, max-coordinate and root targets in dimension `d`.
pub fn builtin_targets(d: usize) -> Result<Vec<TargetFunction>, HarnessError> {
    BUILTIN_NAMES.iter().map(|n| builtin_target(n, d)).collect()
}
