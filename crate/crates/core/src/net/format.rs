//! JSON network file format (`format_version` 1).
//!
//! ```json
//! { "format_version": 1, "input_dim": 1, "activation": "relu", "output_scale": "1",
//!   "matrices": [ { "rows": 1, "cols": 2, "entries": ["0", "1"] } ] }
//! ```
//!
//! Entries are row-major rationals written as `p/q` or integers. The writer
//! always emits lowest terms; the reader normalizes.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{RationalParseError, RationalScalar};

use super::{ActivationKind, NetError, Network, WeightMatrix};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported format_version {0} (expected {FORMAT_VERSION})")]
    Version(u32),
    #[error("{0}")]
    Activation(String),
    #[error("bad rational at {location}: {source}")]
    Entry {
        location: String,
        source: RationalParseError,
    },
    #[error("inconsistent network: {0}")]
    Invalid(#[from] NetError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NetworkFile {
    format_version: u32,
    input_dim: usize,
    activation: String,
    output_scale: String,
    matrices: Vec<MatrixFile>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixFile {
    rows: usize,
    cols: usize,
    entries: Vec<String>,
}

pub(crate) fn parse_rational_at(s: &str, location: impl FnOnce() -> String) -> Result<RationalScalar, FormatError> {
    s.parse().map_err(|source| FormatError::Entry {
        location: location(),
        source,
    })
}

pub fn to_json_string(net: &Network) -> String {
    let file = NetworkFile {
        format_version: FORMAT_VERSION,
        input_dim: net.input_dim(),
        activation: net.activation().name().to_string(),
        output_scale: net.output_scale().to_string(),
        matrices: net
            .matrices()
            .iter()
            .map(|m| MatrixFile {
                rows: m.rows(),
                cols: m.cols(),
                entries: m.entries().iter().map(ToString::to_string).collect(),
            })
            .collect(),
    };
    let mut s = serde_json::to_string(&file).expect("network file serializes");
    s.push('\n');
    s
}

pub fn from_json_str(s: &str) -> Result<Network, FormatError> {
    let file: NetworkFile = serde_json::from_str(s)?;
    if file.format_version != FORMAT_VERSION {
        return Err(FormatError::Version(file.format_version));
    }
    let activation: ActivationKind = file.activation.parse().map_err(FormatError::Activation)?;
    let output_scale = parse_rational_at(&file.output_scale, || "output_scale".to_string())?;
    let mut matrices = Vec::with_capacity(file.matrices.len());
    for (i, m) in file.matrices.into_iter().enumerate() {
        let entries = m
            .entries
            .iter()
            .enumerate()
            .map(|(j, e)| parse_rational_at(e, || format!("matrices[{i}].entries[{j}]")))
            .collect::<Result<Vec<_>, _>>()?;
        let matrix = WeightMatrix::new(m.rows, m.cols, entries).map_err(|e| match e {
            NetError::EntryCount { rows, cols, found } => NetError::MatrixEntryCount {
                layer: i,
                rows,
                cols,
                found,
            },
            other => other,
        })?;
        matrices.push(matrix);
    }
    Ok(Network::new(file.input_dim, matrices, activation, output_scale)?)
}

pub fn write_network(net: &Network, path: &Path) -> Result<(), FormatError> {
    std::fs::write(path, to_json_string(net)).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn read_network(path: &Path) -> Result<Network, FormatError> {
    let s = std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })?;
    from_json_str(&s)
}
