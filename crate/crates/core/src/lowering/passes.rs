use crate::net::{ActivationKind, Network, WeightMatrix, WeightSet};
use crate::rational::RationalScalar;

use super::certificate::{LoweringBounds, LoweringCertificate, LoweringPass, NetSummary};
use super::decompose::{decompose_binary, decompose_ternary};
use super::prefix::{binary_prefix, ternary_prefix, PrefixFragment};
use super::LoweringError;

fn check_source(net: &Network, alphabet: WeightSet) -> Result<(), LoweringError> {
    let report = net.validate(alphabet);
    if let Some(offender) = report.first_offender {
        return Err(LoweringError::NotInAlphabet {
            expected: alphabet,
            offender,
        });
    }
    if net.activation() != ActivationKind::Relu {
        return Err(LoweringError::Activation(net.activation()));
    }
    if *net.output_scale() != RationalScalar::ONE {
        return Err(LoweringError::OutputScale(net.output_scale().clone()));
    }
    Ok(())
}

/// Prepends `prefix` (which emits `copies` copies of each input coordinate) and
/// replicates every hidden unit `copies` times. A weight `w` from unit `u` to unit
/// `v` becomes `split(w)[b]` on the edge from copy `b` of `u` to each copy of `v`.
/// The readout maps back to the original, un-duplicated outputs.
fn replicate<const K: usize>(
    net: &Network,
    prefix: PrefixFragment,
    split: impl Fn(&RationalScalar) -> Result<[RationalScalar; K], LoweringError>,
) -> Result<Network, LoweringError> {
    let mut matrices = prefix.into_layers();
    let last = net.matrices().len() - 1;
    for (i, m) in net.matrices().iter().enumerate() {
        let out_copies = if i == last { 1 } else { K };
        let mut lowered = WeightMatrix::zeros(m.rows() * out_copies, m.cols() * K);
        for v in 0..m.rows() {
            for u in 0..m.cols() {
                let parts = split(m.get(v, u))?;
                for a in 0..out_copies {
                    for (b, w) in parts.iter().enumerate() {
                        lowered.set(v * out_copies + a, u * K + b, w.clone());
                    }
                }
            }
        }
        matrices.push(lowered);
    }
    Ok(Network::relu(net.input_dim(), matrices)?)
}

/// Lowers a `{0, ±1/2, ±1, 2}` ReLU network to an equivalent `{0, ±1/2}` network
/// two layers deeper.
pub fn ternarize(net: &Network) -> Result<(Network, LoweringCertificate), LoweringError> {
    check_source(net, WeightSet::BaseA)?;
    let d = net.input_dim();
    let lowered = replicate(net, ternary_prefix(d), decompose_ternary)?;
    let source = NetSummary::of(net);
    let bounds = LoweringBounds {
        depth: source.depth + 2,
        width_max: 4 * source.width_max,
        sparsity: Some(16 * source.sparsity + 20 * (d + 1)),
    };
    let cert = LoweringCertificate::new(LoweringPass::Ternary, source, &lowered, bounds, WeightSet::TernaryHalf);
    Ok((lowered, cert))
}

/// Lowers a `{0, ±1/2}` ReLU network to an equivalent `{±1/4}` network three
/// layers deeper.
pub fn binarize(net: &Network) -> Result<(Network, LoweringCertificate), LoweringError> {
    check_source(net, WeightSet::TernaryHalf)?;
    let lowered = replicate(net, binary_prefix(net.input_dim()), decompose_binary)?;
    let source = NetSummary::of(net);
    let bounds = LoweringBounds {
        depth: source.depth + 3,
        width_max: 8 * source.width_max,
        sparsity: None,
    };
    let cert = LoweringCertificate::new(LoweringPass::Binary, source, &lowered, bounds, WeightSet::BinaryQuarter);
    Ok((lowered, cert))
}
