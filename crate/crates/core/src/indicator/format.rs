//! Files for indicator approximators.
//!
//! A materialized approximator is stored as an ordinary network file. When the
//! selector is too large to write out, the readout-only form records `d`, `M` and
//! `U_f`; the threshold and selector matrices are implied by `(d, M)`.
//!
//! ```json
//! { "format_version": 1, "kind": "cell_readout", "d": 1, "M": 4,
//!   "values": ["0", "1/5", "2/5", "3/5", "4/5"] }
//! ```

use serde::{Deserialize, Serialize};

use crate::net::format::{self, parse_rational_at, FormatError, FORMAT_VERSION};
use crate::net::Network;

use super::{ApproxError, ApproximatorBundle, CellReadout, GridSpec};

pub const READOUT_KIND: &str = "cell_readout";

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ReadoutFile {
    format_version: u32,
    kind: String,
    d: usize,
    #[serde(rename = "M")]
    m: usize,
    values: Vec<String>,
}

#[derive(Debug, Clone)]
pub enum BundleFile {
    Network(Network),
    Readout(CellReadout),
}

impl BundleFile {
    /// The piecewise-constant form, checking a materialized network's structure.
    pub fn to_readout(&self) -> Result<CellReadout, ApproxError> {
        match self {
            BundleFile::Network(net) => CellReadout::from_network(net),
            BundleFile::Readout(r) => Ok(r.clone()),
        }
    }
}

pub fn readout_to_json_string(readout: &CellReadout) -> String {
    let file = ReadoutFile {
        format_version: FORMAT_VERSION,
        kind: READOUT_KIND.into(),
        d: readout.grid().d(),
        m: readout.grid().resolution(),
        values: readout.values().iter().map(ToString::to_string).collect(),
    };
    let mut s = serde_json::to_string(&file).expect("readout file serializes");
    s.push('\n');
    s
}

/// Network file when materialized, readout-only file otherwise.
pub fn bundle_to_json_string(bundle: &ApproximatorBundle) -> String {
    match bundle.network() {
        Some(net) => format::to_json_string(net),
        None => readout_to_json_string(bundle.readout()),
    }
}

#[derive(Debug, thiserror::Error)]
pub enum BundleFormatError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Approx(#[from] ApproxError),
}

pub fn bundle_from_json_str(s: &str) -> Result<BundleFile, BundleFormatError> {
    let value: serde_json::Value = serde_json::from_str(s).map_err(FormatError::from)?;
    if value.get("kind").is_none() {
        return Ok(BundleFile::Network(format::from_json_str(s)?));
    }
    let file: ReadoutFile = serde_json::from_value(value).map_err(FormatError::from)?;
    if file.format_version != FORMAT_VERSION {
        return Err(FormatError::Version(file.format_version).into());
    }
    if file.kind != READOUT_KIND {
        return Err(ApproxError::NotABundle(format!("unknown kind `{}`", file.kind)).into());
    }
    let values = file
        .values
        .iter()
        .enumerate()
        .map(|(i, v)| parse_rational_at(v, || format!("values[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BundleFile::Readout(CellReadout::new(GridSpec::new(file.d, file.m)?, values)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::indicator::{build_approximator, BuildOptions, HolderFunctionSpec, Materialize};
    use crate::rational::RationalScalar;
    use std::sync::Arc;

    fn identity() -> HolderFunctionSpec {
        HolderFunctionSpec::new(1, 1.0, 1.0, 1.0, Arc::new(|x: &[RationalScalar]| Ok(x[0].clone()))).unwrap()
    }

    #[test]
    fn both_forms_round_trip() {
        let b = build_approximator(&identity(), 0.25, BuildOptions::default()).unwrap();
        let text = bundle_to_json_string(&b);
        let back = bundle_from_json_str(&text).unwrap();
        assert!(matches!(back, BundleFile::Network(_)));
        assert_eq!(back.to_readout().unwrap(), *b.readout());

        let opts = BuildOptions { materialize: Materialize::Never, ..BuildOptions::default() };
        let b = build_approximator(&identity(), 0.25, opts).unwrap();
        let text = bundle_to_json_string(&b);
        assert!(text.contains("\"kind\":\"cell_readout\""));
        let back = bundle_from_json_str(&text).unwrap();
        assert_eq!(back.to_readout().unwrap(), *b.readout());
    }

    #[test]
    fn rejects_bad_readouts() {
        let short = r#"{"format_version":1,"kind":"cell_readout","d":1,"M":2,"values":["0","1"]}"#;
        assert!(bundle_from_json_str(short).is_err());
        let kind = r#"{"format_version":1,"kind":"other","d":1,"M":1,"values":["0","1"]}"#;
        assert!(bundle_from_json_str(kind).is_err());
    }

    #[test]
    fn ordinary_relu_net_is_not_a_bundle() {
        let text = r#"{"format_version":1,"input_dim":1,"activation":"relu","output_scale":"1",
            "matrices":[{"rows":1,"cols":2,"entries":["0","1"]}]}"#;
        let f = bundle_from_json_str(text).unwrap();
        assert!(f.to_readout().is_err());
    }
}
