use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::harness::sample::random_rational_point;
use crate::rational::RationalScalar;

use super::bundle::{
    build_readout, ApproxCertificate, ApproximatorBundle, BuildOptions, CellReadout,
    CertificateBasis, Evaluator,
};
use super::{ApproxError, GridSpec};

#[derive(Debug, Clone, Copy)]
pub struct ContinuousOptions {
    /// Largest resolution the modulus search may reach.
    pub max_m: usize,
    pub samples: usize,
    pub seed: u64,
    pub build: BuildOptions,
}

impl Default for ContinuousOptions {
    fn default() -> Self {
        ContinuousOptions {
            max_m: 1024,
            samples: 512,
            seed: 0,
            build: BuildOptions::default(),
        }
    }
}

/// Sampled estimate of `sup |f(x) - f(x_k)|` over points `x` in cell `k`.
///
/// Probes random points and cell far corners (just below the next threshold, or the
/// upper face for the last cell). Every cell is probed when the grid has at most
/// `samples` cells.
pub fn sampled_cell_modulus(
    f: &Evaluator,
    grid: &GridSpec,
    samples: usize,
    seed: u64,
) -> Result<f64, ApproxError> {
    let m = grid.resolution();
    let nudge = RationalScalar::new(1, (m as i64 + 1) << 20);
    let far_corner = |k: usize| -> Vec<RationalScalar> {
        grid.coords_of(k)
            .into_iter()
            .map(|c| if c == m { RationalScalar::ONE } else { &grid.threshold(c + 1) - &nudge })
            .collect()
    };
    let eval = |k: usize, x: &[RationalScalar]| {
        f(x).map_err(|message| ApproxError::Evaluator { cell: k, message })
    };
    let gap = |k: usize, x: &[RationalScalar]| -> Result<f64, ApproxError> {
        let rep = eval(k, &grid.representative(k))?;
        Ok((&eval(k, x)? - &rep).abs().to_f64())
    };

    let mut worst = 0.0f64;
    if grid.cell_count() <= samples {
        for k in 0..grid.cell_count() {
            worst = worst.max(gap(k, &far_corner(k))?);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let x = random_rational_point(&mut rng, grid.d());
        let k = grid.cell_index_exact(&x)?;
        worst = worst.max(gap(k, &x)?).max(gap(k, &far_corner(k))?);
    }
    Ok(worst)
}

/// Depth-2 approximator for a continuous `f` without Hölder data.
///
/// With `m_override` the grid is built at that resolution. Otherwise the smallest
/// `M <= max_m` whose sampled cell modulus is `<= ε` is used. Neither path is a
/// proof of the error bound; the certificate says so.
pub fn approximate_continuous(
    f: Evaluator,
    d: usize,
    epsilon: f64,
    m_override: Option<usize>,
    opts: ContinuousOptions,
) -> Result<ApproximatorBundle, ApproxError> {
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(ApproxError::Domain(format!("epsilon must be positive, got {epsilon}")));
    }
    let (grid, modulus, basis, note) = match m_override {
        Some(m) => {
            let grid = GridSpec::new(d, m)?;
            let modulus = sampled_cell_modulus(&f, &grid, opts.samples, opts.seed)?;
            (grid, modulus, CertificateBasis::UserSuppliedM, "user-supplied M; no Hölder data")
        }
        None => {
            let mut found = None;
            for m in 1..=opts.max_m {
                let grid = GridSpec::new(d, m)?;
                let modulus = sampled_cell_modulus(&f, &grid, opts.samples, opts.seed)?;
                if modulus <= epsilon {
                    found = Some((grid, modulus));
                    break;
                }
            }
            let (grid, modulus) = found.ok_or(ApproxError::ResolutionCap { cap: opts.max_m })?;
            (grid, modulus, CertificateBasis::Heuristic, "heuristic: sampled modulus of continuity, not a proof")
        }
    };
    let values = build_readout(&f, &grid)?;
    let certificate = ApproxCertificate {
        d,
        m: grid.resolution(),
        beta: None,
        k: None,
        f: None,
        epsilon,
        bound: None,
        bound_formula: "K/(M+1)^beta".into(),
        certified: false,
        basis,
        estimated_modulus: Some(modulus),
        note: Some(note.into()),
    };
    ApproximatorBundle::assemble(CellReadout::new(grid, values)?, certificate, opts.build)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::indicator::choose_resolution;
    use std::sync::Arc;

    fn r(n: i64, d: i64) -> RationalScalar {
        RationalScalar::new(n, d)
    }

    #[test]
    fn lipschitz_heuristic_is_close_to_certified() {
        let id: Evaluator = Arc::new(|x: &[RationalScalar]| Ok(x[0].clone()));
        for eps in [0.2, 0.1, 0.05] {
            let b = approximate_continuous(id.clone(), 1, eps, None, ContinuousOptions::default()).unwrap();
            let m = b.certificate().m;
            let certified = choose_resolution(1.0, 1.0, eps).unwrap();
            assert!(m * 2 >= certified && m <= certified * 2, "eps {eps}: {m} vs {certified}");
            assert!(!b.certificate().certified);
            assert_eq!(b.certificate().basis, CertificateBasis::Heuristic);
        }
    }

    #[test]
    fn constant_needs_one_cell_per_axis() {
        let c: Evaluator = Arc::new(|_: &[RationalScalar]| Ok(r(2, 3)));
        let b = approximate_continuous(c, 2, 0.01, None, ContinuousOptions::default()).unwrap();
        assert_eq!(b.certificate().m, 1);
        assert_eq!(b.evaluate_implicit(&[r(1, 3), r(1, 1)]).unwrap(), r(2, 3));
    }

    #[test]
    fn override_resolution() {
        let id: Evaluator = Arc::new(|x: &[RationalScalar]| Ok(x[0].clone()));
        let b = approximate_continuous(id, 1, 0.3, Some(3), ContinuousOptions::default()).unwrap();
        assert_eq!(b.certificate().m, 3);
        assert_eq!(b.certificate().basis, CertificateBasis::UserSuppliedM);
        let worst = (0..=1000)
            .map(|i| {
                let x = r(i, 1000);
                (&b.evaluate_implicit(std::slice::from_ref(&x)).unwrap() - &x).abs()
            })
            .max()
            .unwrap();
        assert!(worst <= r(1, 4));
    }

    #[test]
    fn cap_exceeded() {
        let steep: Evaluator = Arc::new(|x: &[RationalScalar]| Ok(&x[0] * &RationalScalar::from_integer(1000)));
        let opts = ContinuousOptions { max_m: 5, ..ContinuousOptions::default() };
        assert!(matches!(
            approximate_continuous(steep, 1, 0.1, None, opts),
            Err(ApproxError::ResolutionCap { cap: 5 })
        ));
    }
}
