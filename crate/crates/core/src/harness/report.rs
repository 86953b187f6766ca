use std::io::Write;

use serde::Serialize;

use crate::indicator::{build_approximator, ApproximatorBundle, BuildOptions};

use super::sup::sup_error;
use super::{HarnessError, TargetFunction};

pub const CSV_HEADER: [&str; 12] = [
    "target", "d", "beta", "K", "epsilon", "M", "depth", "widths", "sparsity", "sup_error", "bound", "pass",
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub target: String,
    pub d: usize,
    pub beta: f64,
    #[serde(rename = "K")]
    pub k: f64,
    pub epsilon: f64,
    #[serde(rename = "M")]
    pub m: usize,
    pub depth: usize,
    /// Width vector joined with `;`.
    pub widths: String,
    pub sparsity: usize,
    pub sup_error: f64,
    pub bound: f64,
    pub pass: bool,
}

impl ReportRow {
    pub fn measure(
        target: &TargetFunction,
        bundle: &ApproximatorBundle,
        n_per_axis: usize,
    ) -> Result<Self, HarnessError> {
        let err = sup_error(bundle, target, n_per_axis)?;
        Ok(ReportRow {
            target: target.name.clone(),
            d: target.d(),
            beta: target.spec.beta,
            k: target.spec.k,
            epsilon: bundle.epsilon(),
            m: bundle.grid().resolution(),
            depth: bundle.depth(),
            widths: bundle
                .widths()
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(";"),
            sparsity: bundle.sparsity(),
            sup_error: err.sup_error,
            bound: err.theoretical_bound,
            pass: err.pass && err.theoretical_bound <= bundle.epsilon(),
        })
    }
}

/// One row per `(target, epsilon)`, in input order. Bundles are kept implicit when
/// the selector would exceed `opts.selector_cap`.
pub fn build_report(
    targets: &[TargetFunction],
    epsilons: &[f64],
    n_per_axis: usize,
    opts: BuildOptions,
) -> Result<Vec<ReportRow>, HarnessError> {
    let mut rows = Vec::with_capacity(targets.len() * epsilons.len());
    for target in targets {
        for &eps in epsilons {
            let bundle = build_approximator(&target.spec, eps, opts)?;
            rows.push(ReportRow::measure(target, &bundle, n_per_axis)?);
        }
    }
    Ok(rows)
}

/// Header row plus one record per row, `,`-separated with LF line endings.
pub fn write_csv<W: Write>(rows: &[ReportRow], sink: W) -> Result<(), HarnessError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .has_headers(false)
        .from_writer(sink);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}
