use crate::rational::RationalScalar;

use super::{ActivationKind, NetError, WeightMatrix, WeightSet};

/// A feedforward network `f(x) = s · W_L · act ∘ W_{L-1} · … · act ∘ W_0 · (1, x)`.
///
/// The first column of `W_0` multiplies the constant coordinate `1`. Networks are
/// immutable once built; every constructor checks the layer chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Network {
    input_dim: usize,
    matrices: Vec<WeightMatrix>,
    activation: ActivationKind,
    output_scale: RationalScalar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalMode {
    Exact,
    Float,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outputs {
    Exact(Vec<RationalScalar>),
    Float(Vec<f64>),
}

impl Outputs {
    pub fn to_f64(&self) -> Vec<f64> {
        match self {
            Outputs::Exact(v) => v.iter().map(RationalScalar::to_f64).collect(),
            Outputs::Float(v) => v.clone(),
        }
    }
}

/// The first weight that falls outside the requested alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Offender {
    pub layer: usize,
    pub row: usize,
    pub col: usize,
    pub value: RationalScalar,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub weight_set: WeightSet,
    pub pass: bool,
    pub first_offender: Option<Offender>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsityReport {
    pub total_nonzero: usize,
    pub per_matrix: Vec<usize>,
}

impl Network {
    pub fn new(
        input_dim: usize,
        matrices: Vec<WeightMatrix>,
        activation: ActivationKind,
        output_scale: RationalScalar,
    ) -> Result<Self, NetError> {
        if input_dim == 0 {
            return Err(NetError::ZeroInputDim);
        }
        let first = matrices.first().ok_or(NetError::NoMatrices)?;
        if first.cols() != input_dim + 1 {
            return Err(NetError::InputWidth {
                expected: input_dim + 1,
                found: first.cols(),
            });
        }
        for (i, pair) in matrices.windows(2).enumerate() {
            if pair[0].rows() != pair[1].cols() {
                return Err(NetError::LayerMismatch {
                    layer: i + 1,
                    expected: pair[0].rows(),
                    found: pair[1].cols(),
                });
            }
        }
        Ok(Network {
            input_dim,
            matrices,
            activation,
            output_scale,
        })
    }

    /// A plain ReLU network with unit output scale.
    pub fn relu(input_dim: usize, matrices: Vec<WeightMatrix>) -> Result<Self, NetError> {
        Network::new(input_dim, matrices, ActivationKind::Relu, RationalScalar::ONE)
    }

    pub fn input_dim(&self) -> usize {
        self.input_dim
    }

    pub fn matrices(&self) -> &[WeightMatrix] {
        &self.matrices
    }

    pub fn into_matrices(self) -> Vec<WeightMatrix> {
        self.matrices
    }

    pub fn activation(&self) -> ActivationKind {
        self.activation
    }

    pub fn output_scale(&self) -> &RationalScalar {
        &self.output_scale
    }

    /// Number of activation applications, `L`.
    pub fn depth(&self) -> usize {
        self.matrices.len() - 1
    }

    pub fn output_dim(&self) -> usize {
        self.matrices.last().map_or(0, WeightMatrix::rows)
    }

    /// Width vector `(p_0, …, p_{L+1})` with `p_0 = d + 1`.
    pub fn widths(&self) -> Vec<usize> {
        std::iter::once(self.input_dim + 1)
            .chain(self.matrices.iter().map(WeightMatrix::rows))
            .collect()
    }

    pub fn width_max(&self) -> usize {
        self.widths().into_iter().max().unwrap_or(0)
    }

    pub fn sparsity(&self) -> SparsityReport {
        let per_matrix: Vec<usize> = self.matrices.iter().map(WeightMatrix::nonzero_count).collect();
        SparsityReport {
            total_nonzero: per_matrix.iter().sum(),
            per_matrix,
        }
    }

    /// Checks every matrix entry against `ws`. The output scale is not a weight and is
    /// never checked.
    pub fn validate(&self, ws: WeightSet) -> ValidationReport {
        let first_offender = self.matrices.iter().enumerate().find_map(|(layer, m)| {
            m.entries()
                .iter()
                .position(|w| !ws.contains(w))
                .map(|idx| Offender {
                    layer,
                    row: idx / m.cols(),
                    col: idx % m.cols(),
                    value: m.entries()[idx].clone(),
                })
        });
        ValidationReport {
            weight_set: ws,
            pass: first_offender.is_none(),
            first_offender,
        }
    }

    fn check_input(&self, len: usize) -> Result<(), NetError> {
        if len != self.input_dim {
            return Err(NetError::InputDimension {
                expected: self.input_dim,
                found: len,
            });
        }
        Ok(())
    }

    /// Outputs of every layer: the post-activation vector of each hidden layer
    /// followed by the scaled network output.
    pub fn trace_exact(&self, x: &[RationalScalar]) -> Result<Vec<Vec<RationalScalar>>, NetError> {
        self.check_input(x.len())?;
        let mut h: Vec<RationalScalar> = std::iter::once(RationalScalar::ONE)
            .chain(x.iter().cloned())
            .collect();
        let (last, hidden) = self.matrices.split_last().ok_or(NetError::NoMatrices)?;
        let mut trace = Vec::with_capacity(self.matrices.len());
        for m in hidden {
            h = m
                .mul_vec_exact(&h)
                .iter()
                .map(|z| self.activation.apply_exact(z))
                .collect();
            trace.push(h.clone());
        }
        let mut out = last.mul_vec_exact(&h);
        if self.output_scale != RationalScalar::ONE {
            for o in &mut out {
                *o = &*o * &self.output_scale;
            }
        }
        trace.push(out);
        Ok(trace)
    }

    pub fn eval_exact(&self, x: &[RationalScalar]) -> Result<Vec<RationalScalar>, NetError> {
        let mut trace = self.trace_exact(x)?;
        Ok(trace.pop().unwrap_or_default())
    }

    pub fn eval_f64(&self, x: &[f64]) -> Result<Vec<f64>, NetError> {
        self.check_input(x.len())?;
        let mut h: Vec<f64> = std::iter::once(1.0).chain(x.iter().copied()).collect();
        let n = self.matrices.len();
        for (i, m) in self.matrices.iter().enumerate() {
            let cols = m.cols();
            let weights = m.to_f64();
            let mut next: Vec<f64> = weights
                .chunks_exact(cols)
                .map(|row| row.iter().zip(&h).map(|(w, v)| w * v).sum())
                .collect();
            if i + 1 < n {
                for z in &mut next {
                    *z = self.activation.apply_f64(*z);
                }
            }
            h = next;
        }
        let scale = self.output_scale.to_f64();
        if scale != 1.0 {
            for o in &mut h {
                *o *= scale;
            }
        }
        Ok(h)
    }

    /// Evaluates at a rational point in the requested mode. Float mode rounds `x` to
    /// the nearest `f64` first.
    pub fn evaluate(&self, x: &[RationalScalar], mode: EvalMode) -> Result<Outputs, NetError> {
        match mode {
            EvalMode::Exact => self.eval_exact(x).map(Outputs::Exact),
            EvalMode::Float => {
                let xf: Vec<f64> = x.iter().map(RationalScalar::to_f64).collect();
                self.eval_f64(&xf).map(Outputs::Float)
            }
        }
    }
}
