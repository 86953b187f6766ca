//! Exact feedforward networks: representation, evaluation, alphabet validation,
//! sparsity counting and the JSON file format.

mod alphabet;
pub mod format;
mod matrix;
mod network;

use thiserror::Error;

pub use alphabet::{ActivationKind, WeightSet};
pub use matrix::WeightMatrix;
pub use network::{
    EvalMode, Network, Offender, Outputs, SparsityReport, ValidationReport,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetError {
    #[error("network has no weight matrices")]
    NoMatrices,
    #[error("input dimension must be positive")]
    ZeroInputDim,
    #[error("matrix dimensions must be positive, got {rows}x{cols}")]
    EmptyMatrix { rows: usize, cols: usize },
    #[error("{rows}x{cols} matrix needs {} entries, found {found}", rows * cols)]
    EntryCount { rows: usize, cols: usize, found: usize },
    #[error("matrix {layer}: {rows}x{cols} matrix needs {} entries, found {found}", rows * cols)]
    MatrixEntryCount {
        layer: usize,
        rows: usize,
        cols: usize,
        found: usize,
    },
    #[error("first matrix must have input_dim + 1 = {expected} columns, found {found}")]
    InputWidth { expected: usize, found: usize },
    #[error("matrix {layer} has {found} columns but the previous layer has {expected} rows")]
    LayerMismatch {
        layer: usize,
        expected: usize,
        found: usize,
    },
    #[error("input has {found} coordinates, network expects {expected}")]
    InputDimension { expected: usize, found: usize },
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::rational::RationalScalar;

    fn r(n: i64, d: i64) -> RationalScalar {
        RationalScalar::new(n, d)
    }

    /// `d = 1`, `W_0 = [[-1/2, 1], [0, 1]]`, `W_1 = [[1, -1/2]]`.
    pub(crate) fn two_layer_example() -> Network {
        Network::relu(
            1,
            vec![
                WeightMatrix::from_pairs(&[&[(-1, 2), (1, 1)], &[(0, 1), (1, 1)]]).unwrap(),
                WeightMatrix::from_pairs(&[&[(1, 1), (-1, 2)]]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn single_linear_layer_is_identity() {
        let net = Network::relu(1, vec![WeightMatrix::from_pairs(&[&[(0, 1), (1, 1)]]).unwrap()]).unwrap();
        assert_eq!(net.depth(), 0);
        assert_eq!(net.eval_exact(&[r(7, 10)]).unwrap(), vec![r(7, 10)]);
        assert_eq!(net.eval_f64(&[0.7]).unwrap(), vec![0.7]);
    }

    #[test]
    fn two_layer_hand_evaluation() {
        // σ(0.8 - 0.5) - 0.5 · σ(0.8) = 0.3 - 0.4
        let net = two_layer_example();
        assert_eq!(net.eval_exact(&[r(4, 5)]).unwrap(), vec![r(-1, 10)]);
        assert!((net.eval_f64(&[0.8]).unwrap()[0] + 0.1).abs() < 1e-15);
        assert_eq!(net.widths(), vec![2, 2, 1]);
        assert_eq!(net.depth(), 1);
    }

    #[test]
    fn indicator_layer() {
        let net = Network::new(
            1,
            vec![
                WeightMatrix::from_pairs(&[&[(0, 1), (1, 1)]]).unwrap(),
                WeightMatrix::from_pairs(&[&[(1, 1)]]).unwrap(),
            ],
            ActivationKind::Indicator01,
            RationalScalar::ONE,
        )
        .unwrap();
        assert_eq!(net.eval_exact(&[r(7, 10)]).unwrap(), vec![RationalScalar::ONE]);
        assert_eq!(net.eval_exact(&[RationalScalar::ONE]).unwrap(), vec![RationalScalar::ZERO]);
    }

    #[test]
    fn dimension_errors_name_the_layer() {
        let w0 = WeightMatrix::from_pairs(&[&[(1, 1), (1, 1)]]).unwrap();
        let w1 = WeightMatrix::from_pairs(&[&[(1, 1), (1, 1)]]).unwrap();
        assert_eq!(
            Network::relu(1, vec![w0.clone(), w1]),
            Err(NetError::LayerMismatch { layer: 1, expected: 1, found: 2 })
        );
        assert_eq!(
            Network::relu(2, vec![w0.clone()]),
            Err(NetError::InputWidth { expected: 3, found: 2 })
        );
        let net = Network::relu(1, vec![w0]).unwrap();
        assert_eq!(
            net.eval_exact(&[r(1, 2), r(1, 2)]),
            Err(NetError::InputDimension { expected: 1, found: 2 })
        );
        assert!(net.eval_f64(&[]).is_err());
    }

    #[test]
    fn output_scale_applies() {
        let net = Network::new(
            1,
            vec![WeightMatrix::from_pairs(&[&[(0, 1), (1, 1)]]).unwrap()],
            ActivationKind::Relu,
            r(1, 4),
        )
        .unwrap();
        assert_eq!(net.eval_exact(&[r(1, 1)]).unwrap(), vec![r(1, 4)]);
        assert_eq!(net.eval_f64(&[1.0]).unwrap(), vec![0.25]);
    }

    #[test]
    fn validation_and_sparsity() {
        let net = two_layer_example();
        assert!(net.validate(WeightSet::BaseA).pass);
        assert!(net.validate(WeightSet::Unrestricted).pass);
        let rep = net.validate(WeightSet::TernaryHalf);
        assert!(!rep.pass);
        let off = rep.first_offender.unwrap();
        assert_eq!((off.layer, off.row, off.col, off.value), (0, 0, 1, r(1, 1)));
        assert_eq!(net.sparsity().total_nonzero, 5);
        assert_eq!(net.sparsity().per_matrix, vec![3, 2]);

        let half = Network::relu(
            1,
            vec![WeightMatrix::from_pairs(&[&[(0, 1), (1, 2)], &[(-1, 2), (0, 1)]]).unwrap(),
                 WeightMatrix::from_pairs(&[&[(1, 2), (1, 2)]]).unwrap()],
        )
        .unwrap();
        assert!(half.validate(WeightSet::TernaryHalf).pass);

        let two = Network::relu(1, vec![WeightMatrix::from_pairs(&[&[(2, 1), (1, 2)]]).unwrap()]).unwrap();
        let rep = two.validate(WeightSet::TernaryHalf);
        assert_eq!(rep.first_offender.map(|o| (o.row, o.col)), Some((0, 0)));

        let quarters = Network::relu(1, vec![WeightMatrix::from_pairs(&[&[(1, 4), (-1, 4)]]).unwrap()]).unwrap();
        assert!(quarters.validate(WeightSet::BinaryQuarter).pass);

        let zero = Network::relu(2, vec![WeightMatrix::zeros(3, 3)]).unwrap();
        assert_eq!(zero.sparsity().total_nonzero, 0);
    }

    #[test]
    fn scale_is_exempt_from_validation() {
        let net = Network::new(
            1,
            vec![WeightMatrix::from_pairs(&[&[(1, 2), (1, 2)]]).unwrap()],
            ActivationKind::Relu,
            r(17, 3),
        )
        .unwrap();
        assert!(net.validate(WeightSet::TernaryHalf).pass);
    }
}
