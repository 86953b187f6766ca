use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::net::{ActivationKind, Network, WeightMatrix};
use crate::rational::RationalScalar;

use super::matrices::{build_selector_matrix, build_threshold_matrix, DEFAULT_SELECTOR_CAP};
use super::{ApproxError, GridSpec};

/// A point evaluator on `[0,1]^d`. Must be reentrant: readouts are built in parallel.
pub type Evaluator = Arc<dyn Fn(&[RationalScalar]) -> Result<RationalScalar, String> + Send + Sync>;

/// A function claimed to satisfy `|f(x) - f(y)| <= K |x - y|_∞^β` and `|f| <= F`.
/// The claim is trusted here; the harness spot-checks it on registration.
#[derive(Clone)]
pub struct HolderFunctionSpec {
    pub d: usize,
    pub beta: f64,
    pub k: f64,
    pub f_bound: f64,
    pub evaluator: Evaluator,
}

impl fmt::Debug for HolderFunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HolderFunctionSpec")
            .field("d", &self.d)
            .field("beta", &self.beta)
            .field("k", &self.k)
            .field("f_bound", &self.f_bound)
            .finish_non_exhaustive()
    }
}

impl HolderFunctionSpec {
    pub fn new(d: usize, beta: f64, k: f64, f_bound: f64, evaluator: Evaluator) -> Result<Self, ApproxError> {
        if d == 0 {
            return Err(ApproxError::Domain("d must be positive".into()));
        }
        check_beta(beta)?;
        check_positive("K", k)?;
        check_positive("F", f_bound)?;
        Ok(HolderFunctionSpec { d, beta, k, f_bound, evaluator })
    }

    pub fn eval(&self, x: &[RationalScalar]) -> Result<RationalScalar, String> {
        (self.evaluator)(x)
    }

    /// `K / (M+1)^β`.
    pub fn cell_bound(&self, m: usize) -> f64 {
        self.k / ((m + 1) as f64).powf(self.beta)
    }
}

fn check_positive(name: &str, v: f64) -> Result<(), ApproxError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(ApproxError::Domain(format!("{name} must be a positive finite number, got {v}")))
    }
}

fn check_beta(beta: f64) -> Result<(), ApproxError> {
    if beta.is_finite() && beta > 0.0 && beta <= 1.0 {
        Ok(())
    } else {
        Err(ApproxError::Domain(format!("beta must lie in (0, 1], got {beta}")))
    }
}

/// Smallest admissible resolution `max(1, ⌈(K/ε)^(1/β)⌉)`.
pub fn choose_resolution(k: f64, beta: f64, epsilon: f64) -> Result<usize, ApproxError> {
    check_positive("K", k)?;
    check_positive("epsilon", epsilon)?;
    check_beta(beta)?;
    let m = (k / epsilon).powf(1.0 / beta).ceil();
    if m > usize::MAX as f64 / 2.0 {
        return Err(ApproxError::Domain(format!("resolution {m} is not representable")));
    }
    Ok((m as usize).max(1))
}

/// `U_f`: entry `k` is `f` at the representative of cell `k`.
pub fn build_readout(
    evaluator: &Evaluator,
    grid: &GridSpec,
) -> Result<Vec<RationalScalar>, ApproxError> {
    let results: Vec<Result<RationalScalar, String>> = (0..grid.cell_count())
        .into_par_iter()
        .map(|k| evaluator(&grid.representative(k)))
        .collect();
    results
        .into_iter()
        .enumerate()
        .map(|(cell, r)| r.map_err(|message| ApproxError::Evaluator { cell, message }))
        .collect()
}

/// Piecewise-constant readout over a grid: the implicit form of the depth-2 network.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellReadout {
    grid: GridSpec,
    values: Vec<RationalScalar>,
}

impl CellReadout {
    pub fn new(grid: GridSpec, values: Vec<RationalScalar>) -> Result<Self, ApproxError> {
        if values.len() != grid.cell_count() {
            return Err(ApproxError::Dimension {
                expected: grid.cell_count(),
                found: values.len(),
            });
        }
        Ok(CellReadout { grid, values })
    }

    /// Recovers the readout from a materialized indicator network after checking that
    /// its first two matrices are exactly the threshold and selector matrices.
    pub fn from_network(net: &Network) -> Result<Self, ApproxError> {
        let not_bundle = |why: &str| ApproxError::NotABundle(why.to_string());
        if net.activation() != ActivationKind::Indicator01 {
            return Err(not_bundle("activation is not indicator01"));
        }
        if net.output_scale() != &RationalScalar::ONE {
            return Err(not_bundle("output scale is not 1"));
        }
        let [w, v, u] = net.matrices() else {
            return Err(not_bundle("expected exactly three matrices"));
        };
        let d = net.input_dim();
        if w.rows() < 2 || (w.rows() - 1) % d != 0 {
            return Err(not_bundle("threshold matrix has the wrong shape"));
        }
        let grid = GridSpec::new(d, (w.rows() - 1) / d)?;
        if *w != build_threshold_matrix(&grid) {
            return Err(not_bundle("threshold matrix differs from the construction"));
        }
        if *v != build_selector_matrix(&grid, u128::MAX)? {
            return Err(not_bundle("selector matrix differs from the construction"));
        }
        if u.rows() != 1 {
            return Err(not_bundle("readout must be a single row"));
        }
        CellReadout::new(grid, u.entries().to_vec())
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn values(&self) -> &[RationalScalar] {
        &self.values
    }

    pub fn eval_exact(&self, x: &[RationalScalar]) -> Result<RationalScalar, ApproxError> {
        Ok(self.values[self.grid.cell_index_exact(x)?].clone())
    }

    pub fn eval_f64(&self, x: &[f64]) -> Result<f64, ApproxError> {
        Ok(self.values[self.grid.cell_index_f64(x)?].to_f64())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateBasis {
    /// Resolution chosen from the Hölder data.
    Holder,
    /// Resolution supplied by the caller.
    UserSuppliedM,
    /// Resolution chosen from a sampled modulus of continuity.
    Heuristic,
}

/// Sidecar certificate for an approximator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApproxCertificate {
    pub d: usize,
    #[serde(rename = "M")]
    pub m: usize,
    pub beta: Option<f64>,
    #[serde(rename = "K")]
    pub k: Option<f64>,
    #[serde(rename = "F")]
    pub f: Option<f64>,
    pub epsilon: f64,
    /// `K/(M+1)^β` when Hölder data is known.
    pub bound: Option<f64>,
    pub bound_formula: String,
    pub certified: bool,
    pub basis: CertificateBasis,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub estimated_modulus: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ApproxCertificate {
    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Materialize {
    /// Fail with a capacity error if the selector exceeds the cap.
    Required,
    /// Materialize when under the cap, otherwise keep the implicit form only.
    Auto,
    /// Never build the selector.
    Never,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    pub selector_cap: u128,
    pub materialize: Materialize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            selector_cap: DEFAULT_SELECTOR_CAP,
            materialize: Materialize::Required,
        }
    }
}

/// The depth-2 indicator approximator `U_f · 1∘V · 1∘W · (1, x)`.
#[derive(Debug, Clone)]
pub struct ApproximatorBundle {
    readout: CellReadout,
    threshold: WeightMatrix,
    network: Option<Network>,
    certificate: ApproxCertificate,
}

impl ApproximatorBundle {
    pub(crate) fn assemble(
        readout: CellReadout,
        certificate: ApproxCertificate,
        opts: BuildOptions,
    ) -> Result<Self, ApproxError> {
        let grid = *readout.grid();
        let threshold = build_threshold_matrix(&grid);
        let selector = match opts.materialize {
            Materialize::Never => None,
            Materialize::Required => Some(build_selector_matrix(&grid, opts.selector_cap)?),
            Materialize::Auto => match build_selector_matrix(&grid, opts.selector_cap) {
                Ok(v) => Some(v),
                Err(ApproxError::Capacity { .. }) => None,
                Err(e) => return Err(e),
            },
        };
        let network = selector
            .map(|v| {
                let u = WeightMatrix::new(1, grid.cell_count(), readout.values().to_vec())?;
                Network::new(
                    grid.d(),
                    vec![threshold.clone(), v, u],
                    ActivationKind::Indicator01,
                    RationalScalar::ONE,
                )
            })
            .transpose()?;
        Ok(ApproximatorBundle {
            readout,
            threshold,
            network,
            certificate,
        })
    }

    pub fn grid(&self) -> &GridSpec {
        self.readout.grid()
    }

    pub fn epsilon(&self) -> f64 {
        self.certificate.epsilon
    }

    pub fn certificate(&self) -> &ApproxCertificate {
        &self.certificate
    }

    pub fn readout(&self) -> &CellReadout {
        &self.readout
    }

    pub fn threshold_matrix(&self) -> &WeightMatrix {
        &self.threshold
    }

    pub fn selector_matrix(&self) -> Option<&WeightMatrix> {
        self.network.as_ref().map(|n| &n.matrices()[1])
    }

    /// `U_f`.
    pub fn readout_vector(&self) -> &[RationalScalar] {
        self.readout.values()
    }

    pub fn network(&self) -> Option<&Network> {
        self.network.as_ref()
    }

    pub fn is_materialized(&self) -> bool {
        self.network.is_some()
    }

    pub fn evaluate_implicit(&self, x: &[RationalScalar]) -> Result<RationalScalar, ApproxError> {
        self.readout.eval_exact(x)
    }

    pub fn evaluate_implicit_f64(&self, x: &[f64]) -> Result<f64, ApproxError> {
        self.readout.eval_f64(x)
    }

    pub fn depth(&self) -> usize {
        2
    }

    /// `(d+1, dM+1, (M+1)^d, 1)`, whether or not the selector is materialized.
    pub fn widths(&self) -> Vec<usize> {
        let g = self.grid();
        vec![g.d() + 1, g.threshold_count() + 1, g.cell_count(), 1]
    }

    /// Nonzero weights, counted analytically for the selector.
    pub fn sparsity(&self) -> usize {
        let g = self.grid();
        // Selector row r: constant r (nonzero unless r = 0) plus dM stride entries.
        let selector = g.cell_count() * g.threshold_count() + g.cell_count() - 1;
        let readout = self.readout.values().iter().filter(|v| !v.is_zero()).count();
        self.threshold.nonzero_count() + selector + readout
    }
}

/// Builds the certified approximator at the resolution the Hölder data requires.
pub fn build_approximator(
    f: &HolderFunctionSpec,
    epsilon: f64,
    opts: BuildOptions,
) -> Result<ApproximatorBundle, ApproxError> {
    let m = choose_resolution(f.k, f.beta, epsilon)?;
    build_with_resolution(f, epsilon, m, CertificateBasis::Holder, opts)
}

/// Builds at a caller-chosen resolution; certified only if `K/(M+1)^β <= ε`.
pub fn build_approximator_at(
    f: &HolderFunctionSpec,
    epsilon: f64,
    m: usize,
    opts: BuildOptions,
) -> Result<ApproximatorBundle, ApproxError> {
    check_positive("epsilon", epsilon)?;
    build_with_resolution(f, epsilon, m, CertificateBasis::UserSuppliedM, opts)
}

fn build_with_resolution(
    f: &HolderFunctionSpec,
    epsilon: f64,
    m: usize,
    basis: CertificateBasis,
    opts: BuildOptions,
) -> Result<ApproximatorBundle, ApproxError> {
    let grid = GridSpec::new(f.d, m)?;
    let values = build_readout(&f.evaluator, &grid)?;
    let bound = f.cell_bound(m);
    let certificate = ApproxCertificate {
        d: f.d,
        m,
        beta: Some(f.beta),
        k: Some(f.k),
        f: Some(f.f_bound),
        epsilon,
        bound: Some(bound),
        bound_formula: "K/(M+1)^beta".into(),
        certified: bound <= epsilon,
        basis,
        estimated_modulus: None,
        note: None,
    };
    ApproximatorBundle::assemble(CellReadout::new(grid, values)?, certificate, opts)
}
