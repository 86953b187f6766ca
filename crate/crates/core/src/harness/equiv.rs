use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::net::{EvalMode, Network};
use crate::rational::RationalScalar;

use super::sample::random_rational_point;
use super::HarnessError;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivalenceReport {
    pub mode: String,
    pub points: usize,
    /// Exact rational in exact mode, shortest round-trip decimal in float mode.
    pub max_diff: String,
    pub max_diff_f64: f64,
    pub argmax_point: Vec<String>,
}

impl EquivalenceReport {
    pub fn is_exact_match(&self) -> bool {
        self.max_diff_f64 == 0.0
    }
}

fn check_dims(a: &Network, b: &Network) -> Result<(), HarnessError> {
    if a.input_dim() != b.input_dim() {
        return Err(HarnessError::Dimension {
            what: "input dimension",
            expected: a.input_dim(),
            found: b.input_dim(),
        });
    }
    if a.output_dim() != b.output_dim() {
        return Err(HarnessError::Dimension {
            what: "output dimension",
            expected: a.output_dim(),
            found: b.output_dim(),
        });
    }
    Ok(())
}

/// Largest coordinate-wise `|a(x) - b(x)|` over the given points.
pub fn equivalence_on_points(
    a: &Network,
    b: &Network,
    points: &[Vec<RationalScalar>],
    mode: EvalMode,
) -> Result<EquivalenceReport, HarnessError> {
    check_dims(a, b)?;
    let mut best = 0usize;
    let (max_diff, max_diff_f64) = match mode {
        EvalMode::Exact => {
            let mut worst = RationalScalar::ZERO;
            for (i, x) in points.iter().enumerate() {
                let (ya, yb) = (a.eval_exact(x)?, b.eval_exact(x)?);
                for (u, v) in ya.iter().zip(&yb) {
                    let diff = (u - v).abs();
                    if diff > worst {
                        worst = diff;
                        best = i;
                    }
                }
            }
            (worst.to_string(), worst.to_f64())
        }
        EvalMode::Float => {
            let mut worst = 0.0f64;
            for (i, x) in points.iter().enumerate() {
                let xf: Vec<f64> = x.iter().map(RationalScalar::to_f64).collect();
                let (ya, yb) = (a.eval_f64(&xf)?, b.eval_f64(&xf)?);
                for (u, v) in ya.iter().zip(&yb) {
                    let diff = (u - v).abs();
                    if diff > worst {
                        worst = diff;
                        best = i;
                    }
                }
            }
            (worst.to_string(), worst)
        }
    };
    Ok(EquivalenceReport {
        mode: match mode {
            EvalMode::Exact => "exact".into(),
            EvalMode::Float => "float".into(),
        },
        points: points.len(),
        max_diff,
        max_diff_f64,
        argmax_point: points
            .get(best)
            .map(|x| x.iter().map(ToString::to_string).collect())
            .unwrap_or_default(),
    })
}

/// Compares two networks on `n_samples` seeded rational points of the cube.
pub fn equivalence_check(
    a: &Network,
    b: &Network,
    n_samples: usize,
    seed: u64,
    mode: EvalMode,
) -> Result<EquivalenceReport, HarnessError> {
    check_dims(a, b)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<_> = (0..n_samples)
        .map(|_| random_rational_point(&mut rng, a.input_dim()))
        .collect();
    equivalence_on_points(a, b, &points, mode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::sample::random_network;
    use crate::lowering::{binarize, ternarize};
    use crate::net::WeightSet;

    #[test]
    fn self_and_lowered() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let g = random_network(&mut rng, 2, 2, 5, WeightSet::BaseA);
        assert!(equivalence_check(&g, &g, 50, 1, EvalMode::Exact).unwrap().is_exact_match());
        let (t, _) = ternarize(&g).unwrap();
        let (b, _) = binarize(&t).unwrap();
        let rep = equivalence_check(&g, &t, 50, 1, EvalMode::Exact).unwrap();
        assert_eq!(rep.max_diff, "0");
        assert!(equivalence_check(&t, &b, 50, 1, EvalMode::Exact).unwrap().is_exact_match());
        assert!(equivalence_check(&g, &b, 50, 1, EvalMode::Float).unwrap().max_diff_f64 < 1e-12);
    }

    #[test]
    fn symmetric_in_arguments() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let a = random_network(&mut rng, 2, 2, 5, WeightSet::BaseA);
        let b = random_network(&mut rng, 2, 2, 5, WeightSet::BaseA);
        let ab = equivalence_check(&a, &b, 40, 9, EvalMode::Exact).unwrap();
        let ba = equivalence_check(&b, &a, 40, 9, EvalMode::Exact).unwrap();
        assert_eq!(ab.max_diff, ba.max_diff);
        assert_eq!(ab.argmax_point, ba.argmax_point);
        let c = random_network(&mut rng, 3, 1, 2, WeightSet::BaseA);
        assert!(equivalence_check(&a, &c, 5, 0, EvalMode::Exact).is_err());
    }
}
