use crate::net::WeightSet;
use crate::rational::RationalScalar;

use super::LoweringError;

/// Splits `w ∈ {0, ±1/2, ±1, 2}` into four `{0, ±1/2}` summands.
///
/// Slots are filled with `sign(w)/2` from the front and padded with zeros, so the
/// split is unique for each input.
pub fn decompose_ternary(w: &RationalScalar) -> Result<[RationalScalar; 4], LoweringError> {
    if !WeightSet::BaseA.contains(w) {
        return Err(LoweringError::WeightOutsideAlphabet {
            value: w.clone(),
            alphabet: WeightSet::BaseA,
        });
    }
    let (num, den) = w.as_small().expect("baseA members are small");
    // Number of ±1/2 halves in w.
    let halves = (num * 2 / den).unsigned_abs() as usize;
    let half = RationalScalar::new(num.signum(), 2);
    Ok(std::array::from_fn(|i| {
        if i < halves {
            half.clone()
        } else {
            RationalScalar::ZERO
        }
    }))
}

/// Splits `w ∈ {0, ±1/2}` into two `{±1/4}` summands; zero becomes `1/4 - 1/4`.
pub fn decompose_binary(w: &RationalScalar) -> Result<[RationalScalar; 2], LoweringError> {
    let q = |n| RationalScalar::new(n, 4);
    match w.as_small() {
        Some((0, 1)) => Ok([q(1), q(-1)]),
        Some((1, 2)) => Ok([q(1), q(1)]),
        Some((-1, 2)) => Ok([q(-1), q(-1)]),
        _ => Err(LoweringError::WeightOutsideAlphabet {
            value: w.clone(),
            alphabet: WeightSet::TernaryHalf,
        }),
    }
}
