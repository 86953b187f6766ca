use crate::net::{ActivationKind, Network, WeightSet};
use crate::rational::RationalScalar;

use super::LoweringError;

/// Which unit alphabet a half/quarter network maps to, with its per-layer factor.
fn unit_factor(net: &Network) -> Result<(i64, ActivationKind), LoweringError> {
    if net.activation() != ActivationKind::Relu {
        return Err(LoweringError::Activation(net.activation()));
    }
    if net.validate(WeightSet::TernaryHalf).pass {
        Ok((2, ActivationKind::ReluHalf))
    } else if net.validate(WeightSet::BinaryQuarter).pass {
        Ok((4, ActivationKind::ReluQuarter))
    } else {
        Err(LoweringError::NotHalfOrQuarter)
    }
}

/// Multiplies every weight by `c` (2 for `{0, ±1/2}`, 4 for `{±1/4}`) and divides the
/// output scale by `c^(number of matrices)`. ReLU is positively homogeneous, so the
/// computed function is unchanged.
pub fn to_unit_weights(net: &Network) -> Result<Network, LoweringError> {
    let (factor, _) = unit_factor(net)?;
    let c = RationalScalar::from_integer(factor);
    let inv = RationalScalar::new(1, factor);
    let matrices: Vec<_> = net.matrices().iter().map(|m| m.map(|w| w * &c)).collect();
    let scale = (0..matrices.len()).fold(net.output_scale().clone(), |s, _| &s * &inv);
    Ok(Network::new(net.input_dim(), matrices, ActivationKind::Relu, scale)?)
}

/// Unit weights with `σ/2` or `σ/4` activation instead of a compounded output scale.
/// Each hidden layer absorbs its own factor; only the readout's `1/c` remains in the
/// output scale.
pub fn to_unit_weights_scaled_activation(net: &Network) -> Result<Network, LoweringError> {
    let (factor, activation) = unit_factor(net)?;
    let c = RationalScalar::from_integer(factor);
    let matrices: Vec<_> = net.matrices().iter().map(|m| m.map(|w| w * &c)).collect();
    let scale = net.output_scale() * &RationalScalar::new(1, factor);
    Ok(Network::new(net.input_dim(), matrices, activation, scale)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::sample::uniform_grid;
    use crate::lowering::{binarize, ternarize};
    use crate::net::tests::two_layer_example;
    use crate::net::WeightMatrix;

    #[test]
    fn scale_exponent_equals_matrix_count() {
        let (t, _) = ternarize(&two_layer_example()).unwrap();
        assert_eq!(t.matrices().len(), 4);
        let tu = to_unit_weights(&t).unwrap();
        assert_eq!(tu.output_scale(), &RationalScalar::new(1, 16));
        assert!(tu.validate(WeightSet::TernaryUnit).pass);

        let (b, _) = binarize(&t).unwrap();
        assert_eq!(b.matrices().len(), 7);
        let bu = to_unit_weights(&b).unwrap();
        assert_eq!(bu.output_scale(), &RationalScalar::new(1, 4i64.pow(7)));
        assert!(bu.validate(WeightSet::BinaryUnit).pass);

        for x in uniform_grid(1, 5) {
            let want = t.eval_exact(&x).unwrap();
            assert_eq!(tu.eval_exact(&x).unwrap(), want);
            assert_eq!(bu.eval_exact(&x).unwrap(), want);
        }
        let mid = [RationalScalar::new(1, 2)];
        assert_eq!(bu.eval_exact(&mid).unwrap(), b.eval_exact(&mid).unwrap());
    }

    #[test]
    fn scaled_activation_variant() {
        let (t, _) = ternarize(&two_layer_example()).unwrap();
        let (b, _) = binarize(&t).unwrap();
        for (net, act, scale) in [(&t, ActivationKind::ReluHalf, 2), (&b, ActivationKind::ReluQuarter, 4)] {
            let u = to_unit_weights_scaled_activation(net).unwrap();
            assert_eq!(u.activation(), act);
            assert_eq!(u.output_scale(), &RationalScalar::new(1, scale));
            for x in uniform_grid(1, 5) {
                assert_eq!(u.eval_exact(&x).unwrap(), net.eval_exact(&x).unwrap());
            }
        }
    }

    #[test]
    fn wrong_alphabet() {
        assert!(matches!(to_unit_weights(&two_layer_example()), Err(LoweringError::NotHalfOrQuarter)));
        let ones = Network::relu(1, vec![WeightMatrix::from_pairs(&[&[(1, 1), (-1, 1)]]).unwrap()]).unwrap();
        assert!(to_unit_weights(&ones).is_err());
    }
}
