use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::rational::RationalScalar;

/// Coordinate-wise activation applied after every hidden weight matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ActivationKind {
    /// `max(0, z)`
    Relu,
    /// `max(0, z) / 2`
    ReluHalf,
    /// `max(0, z) / 4`
    ReluQuarter,
    /// `1` if `0 <= z < 1`, else `0`
    Indicator01,
}

impl ActivationKind {
    pub const ALL: [ActivationKind; 4] = [
        ActivationKind::Relu,
        ActivationKind::ReluHalf,
        ActivationKind::ReluQuarter,
        ActivationKind::Indicator01,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ActivationKind::Relu => "relu",
            ActivationKind::ReluHalf => "relu_half",
            ActivationKind::ReluQuarter => "relu_quarter",
            ActivationKind::Indicator01 => "indicator01",
        }
    }

    pub fn apply_exact(self, z: &RationalScalar) -> RationalScalar {
        match self {
            ActivationKind::Relu => relu(z),
            ActivationKind::ReluHalf => &relu(z) * &RationalScalar::new(1, 2),
            ActivationKind::ReluQuarter => &relu(z) * &RationalScalar::new(1, 4),
            ActivationKind::Indicator01 => {
                if !z.is_negative() && *z < RationalScalar::ONE {
                    RationalScalar::ONE
                } else {
                    RationalScalar::ZERO
                }
            }
        }
    }

    /// IEEE evaluation. Indicator thresholds are decided by float comparison, so an
    /// input that rounds across a threshold can land in the neighbouring cell.
    pub fn apply_f64(self, z: f64) -> f64 {
        match self {
            ActivationKind::Relu => z.max(0.0),
            ActivationKind::ReluHalf => z.max(0.0) * 0.5,
            ActivationKind::ReluQuarter => z.max(0.0) * 0.25,
            ActivationKind::Indicator01 => {
                if (0.0..1.0).contains(&z) {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }
}

fn relu(z: &RationalScalar) -> RationalScalar {
    if z.is_negative() {
        RationalScalar::ZERO
    } else {
        z.clone()
    }
}

impl fmt::Display for ActivationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ActivationKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ActivationKind::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown activation `{s}`"))
    }
}

/// An admissible weight alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WeightSet {
    #[serde(rename = "unrestricted")]
    Unrestricted,
    /// `{0, ±1/2, ±1, 2}`
    #[serde(rename = "baseA")]
    BaseA,
    /// `{0, ±1/2}`
    #[serde(rename = "ternary_half")]
    TernaryHalf,
    /// `{0, ±1}`
    #[serde(rename = "ternary_unit")]
    TernaryUnit,
    /// `{±1/4}`
    #[serde(rename = "binary_quarter")]
    BinaryQuarter,
    /// `{±1}`
    #[serde(rename = "binary_unit")]
    BinaryUnit,
}

impl WeightSet {
    pub const ALL: [WeightSet; 6] = [
        WeightSet::Unrestricted,
        WeightSet::BaseA,
        WeightSet::TernaryHalf,
        WeightSet::TernaryUnit,
        WeightSet::BinaryQuarter,
        WeightSet::BinaryUnit,
    ];

    pub fn name(self) -> &'static str {
        match self {
            WeightSet::Unrestricted => "unrestricted",
            WeightSet::BaseA => "baseA",
            WeightSet::TernaryHalf => "ternary_half",
            WeightSet::TernaryUnit => "ternary_unit",
            WeightSet::BinaryQuarter => "binary_quarter",
            WeightSet::BinaryUnit => "binary_unit",
        }
    }

    /// The finite member list, or `None` for [`WeightSet::Unrestricted`].
    pub fn members(self) -> Option<Vec<RationalScalar>> {
        let r = RationalScalar::new;
        let v = match self {
            WeightSet::Unrestricted => return None,
            WeightSet::BaseA => vec![r(0, 1), r(1, 2), r(-1, 2), r(1, 1), r(-1, 1), r(2, 1)],
            WeightSet::TernaryHalf => vec![r(0, 1), r(1, 2), r(-1, 2)],
            WeightSet::TernaryUnit => vec![r(0, 1), r(1, 1), r(-1, 1)],
            WeightSet::BinaryQuarter => vec![r(1, 4), r(-1, 4)],
            WeightSet::BinaryUnit => vec![r(1, 1), r(-1, 1)],
        };
        Some(v)
    }

    pub fn contains(self, w: &RationalScalar) -> bool {
        let Some((num, den)) = w.as_small() else {
            return self == WeightSet::Unrestricted;
        };
        match self {
            WeightSet::Unrestricted => true,
            WeightSet::BaseA => matches!((num, den), (0, 1) | (1 | -1, 2) | (1 | -1 | 2, 1)),
            WeightSet::TernaryHalf => matches!((num, den), (0, 1) | (1 | -1, 2)),
            WeightSet::TernaryUnit => matches!((num, den), (-1..=1, 1)),
            WeightSet::BinaryQuarter => matches!((num, den), (1 | -1, 4)),
            WeightSet::BinaryUnit => matches!((num, den), (1 | -1, 1)),
        }
    }
}

impl fmt::Display for WeightSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for WeightSet {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        WeightSet::ALL
            .into_iter()
            .find(|w| w.name() == s)
            .ok_or_else(|| format!("unknown weight set `{s}`"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_agrees_with_member_lists() {
        let probes: Vec<RationalScalar> = (-8..=8)
            .flat_map(|n| [1, 2, 4].map(|d| RationalScalar::new(n, d)))
            .collect();
        for ws in WeightSet::ALL {
            for p in &probes {
                let listed = ws.members().is_none_or(|m| m.contains(p));
                assert_eq!(ws.contains(p), listed, "{ws} {p}");
            }
        }
    }

    #[test]
    fn indicator_is_half_open() {
        let a = ActivationKind::Indicator01;
        assert_eq!(a.apply_exact(&RationalScalar::ZERO), RationalScalar::ONE);
        assert_eq!(a.apply_exact(&RationalScalar::new(7, 10)), RationalScalar::ONE);
        assert_eq!(a.apply_exact(&RationalScalar::ONE), RationalScalar::ZERO);
        assert_eq!(a.apply_exact(&RationalScalar::new(-1, 1000)), RationalScalar::ZERO);
        assert_eq!(a.apply_f64(0.999), 1.0);
        assert_eq!(a.apply_f64(1.0), 0.0);
    }

    #[test]
    fn scaled_relus() {
        let z = RationalScalar::new(3, 1);
        assert_eq!(ActivationKind::ReluHalf.apply_exact(&z), RationalScalar::new(3, 2));
        assert_eq!(ActivationKind::ReluQuarter.apply_exact(&z), RationalScalar::new(3, 4));
        assert_eq!(ActivationKind::Relu.apply_exact(&-z), RationalScalar::ZERO);
    }

    #[test]
    fn names_round_trip() {
        for a in ActivationKind::ALL {
            assert_eq!(a.name().parse::<ActivationKind>().unwrap(), a);
        }
        for w in WeightSet::ALL {
            assert_eq!(w.name().parse::<WeightSet>().unwrap(), w);
        }
    }
}
