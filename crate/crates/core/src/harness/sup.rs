use rayon::prelude::*;
use serde::Serialize;

use crate::indicator::{ApproximatorBundle, CellReadout};
use crate::net::Network;
use crate::rational::RationalScalar;

use super::sample::uniform_grid;
use super::{HarnessError, TargetFunction};

/// Anything that maps a point of `[0,1]^d` to a single exact value.
pub trait Approximant: Sync {
    fn input_dim(&self) -> usize;

    fn eval_exact(&self, x: &[RationalScalar]) -> Result<RationalScalar, HarnessError>;

    /// Extra points worth probing (cell representatives for piecewise-constant forms).
    fn probe_points(&self) -> Vec<Vec<RationalScalar>> {
        Vec::new()
    }
}

impl Approximant for Network {
    fn input_dim(&self) -> usize {
        Network::input_dim(self)
    }

    fn eval_exact(&self, x: &[RationalScalar]) -> Result<RationalScalar, HarnessError> {
        let out = Network::eval_exact(self, x)?;
        match out.as_slice() {
            [v] => Ok(v.clone()),
            _ => Err(HarnessError::Dimension {
                what: "network outputs",
                expected: 1,
                found: out.len(),
            }),
        }
    }
}

impl Approximant for CellReadout {
    fn input_dim(&self) -> usize {
        self.grid().d()
    }

    fn eval_exact(&self, x: &[RationalScalar]) -> Result<RationalScalar, HarnessError> {
        Ok(CellReadout::eval_exact(self, x)?)
    }

    fn probe_points(&self) -> Vec<Vec<RationalScalar>> {
        (0..self.grid().cell_count()).map(|k| self.grid().representative(k)).collect()
    }
}

impl Approximant for ApproximatorBundle {
    fn input_dim(&self) -> usize {
        self.grid().d()
    }

    fn eval_exact(&self, x: &[RationalScalar]) -> Result<RationalScalar, HarnessError> {
        Ok(self.evaluate_implicit(x)?)
    }

    fn probe_points(&self) -> Vec<Vec<RationalScalar>> {
        self.readout().probe_points()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorReport {
    pub sup_error: f64,
    pub argmax_point: Vec<String>,
    pub theoretical_bound: f64,
    pub grid_points_per_axis: usize,
    pub points_evaluated: usize,
    /// `K · (1/(n-1))^β`: how far the true sup can exceed the measured one.
    pub grid_slack: f64,
    pub pass: bool,
}

/// Largest `|approx(x) - target(x)|` over the uniform `n`-per-axis grid (endpoints
/// included) plus the approximant's probe points, computed exactly and reported as
/// the nearest `f64`. Ties resolve to the earliest point, so the result does not
/// depend on thread scheduling.
pub fn sup_error_against(
    approx: &dyn Approximant,
    target: &TargetFunction,
    n_per_axis: usize,
    theoretical_bound: f64,
) -> Result<ErrorReport, HarnessError> {
    let d = target.d();
    if approx.input_dim() != d {
        return Err(HarnessError::Dimension {
            what: "input dimension",
            expected: d,
            found: approx.input_dim(),
        });
    }
    if n_per_axis < 2 {
        return Err(HarnessError::Dimension {
            what: "grid points per axis (minimum)",
            expected: 2,
            found: n_per_axis,
        });
    }
    let mut points = uniform_grid(d, n_per_axis);
    points.extend(approx.probe_points());

    let diffs: Vec<RationalScalar> = points
        .par_iter()
        .map(|x| Ok((&approx.eval_exact(x)? - &target.eval(x)?).abs()))
        .collect::<Result<_, HarnessError>>()?;
    let (best, worst) = diffs
        .iter()
        .enumerate()
        .fold((0usize, &RationalScalar::ZERO), |(bi, bv), (i, v)| if v > bv { (i, v) } else { (bi, bv) });
    let sup_error = worst.to_f64();
    let h = 1.0 / (n_per_axis as f64 - 1.0);
    Ok(ErrorReport {
        sup_error,
        argmax_point: points[best].iter().map(ToString::to_string).collect(),
        theoretical_bound,
        grid_points_per_axis: n_per_axis,
        points_evaluated: points.len(),
        grid_slack: target.spec.k * h.powf(target.spec.beta),
        pass: sup_error <= theoretical_bound,
    })
}

/// [`sup_error_against`] with the bound `K/(M+1)^β` of the bundle's grid.
pub fn sup_error(
    bundle: &ApproximatorBundle,
    target: &TargetFunction,
    n_per_axis: usize,
) -> Result<ErrorReport, HarnessError> {
    let bound = target.spec.cell_bound(bundle.grid().resolution());
    sup_error_against(bundle, target, n_per_axis, bound)
}
