use std::f64::consts::FRAC_PI_2;

use bernoulli_core::harmonic::{point_charge_halfplane_field, DirichletProblem};
use bernoulli_core::{ConvexPolygon, Direction, Point};
use serde::{Deserialize, Serialize};

use super::CheckContext;
use crate::error::Result;
use crate::report::{CheckReport, Metric};

const ID: &str = "counterexample";

/// Point charge at `(0, 1)` over the half-plane, truncated to a box with the exact
/// potential as boundary data on both boundaries.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CounterexampleConfig {
    pub h: f64,
    /// Radius of the disk around the charge cut out of the domain.
    pub charge_radius: f64,
    pub segments: usize,
    /// The box is `[-half_width, half_width] × [0, height]`.
    pub half_width: f64,
    pub height: f64,
    /// Gradients are compared on `x₁ ∈ [-span, span]`.
    pub span: f64,
    pub samples: usize,
}

impl Default for CounterexampleConfig {
    fn default() -> Self {
        Self { h: 0.02, charge_radius: 0.25, segments: 128, half_width: 6.0, height: 6.0, span: 3.0, samples: 61 }
    }
}

#[derive(Serialize)]
struct Row {
    x1: f64,
    numeric: f64,
    exact: f64,
}

/// `|∇v|(x₁, 0) = 4 / (x₁² + 1)`.
fn exact_gradient(x1: f64) -> f64 {
    4.0 / (x1 * x1 + 1.0)
}

/// `g(0) - (g(-1) + g(1)) / 2`; positive values violate midpoint concavity.
fn concavity_gap(g: impl Fn(f64) -> Result<f64>) -> Result<f64> {
    Ok(g(0.0)? - 0.5 * (g(-1.0)? + g(1.0)?))
}

/// Compares the truncated numerical solve with the closed-form boundary gradient, checks
/// that `1/|∇v|` is convex along the boundary and that `|∇v|` is not concave.
pub fn check_counterexample(cfg: &CounterexampleConfig, ctx: &CheckContext) -> Result<CheckReport> {
    let max_err_tol = ctx.thresholds.get("max_rel_error", 0.02);
    let conv_tol = ctx.thresholds.get("convexity_tol", 1e-12);
    let charge = ConvexPolygon::regular(cfg.segments, Point::new(0.0, 1.0), cfg.charge_radius, 0.0)?;
    let bx = ConvexPolygon::rectangle(-cfg.half_width, 0.0, cfg.half_width, cfg.height)?;
    let data = |p: Point| point_charge_halfplane_field(p).map_or(f64::NAN, |(v, _)| v);
    let field = DirichletProblem::new(&charge, &bx, cfg.h).inner_data(&data).outer_data(&data).solve()?;
    let up = Direction::new(FRAC_PI_2);
    let numeric = |x1: f64| Ok(field.normal_gradient(Point::new(x1, 0.0), up)?);

    let n = cfg.samples.max(3);
    let xs: Vec<f64> = (0..n).map(|k| -cfg.span + 2.0 * cfg.span * k as f64 / (n - 1) as f64).collect();
    let mut rows = Vec::with_capacity(n);
    for &x1 in &xs {
        rows.push(Row { x1, numeric: numeric(x1)?, exact: exact_gradient(x1) });
    }
    let max_rel = rows.iter().map(|r| (r.numeric / r.exact - 1.0).abs()).fold(0.0, f64::max);
    // The boundary gradient returned alongside the potential agrees with the formula.
    let formula_err = xs
        .iter()
        .map(|&x1| Ok((point_charge_halfplane_field(Point::new(x1, 0.0))?.1 - exact_gradient(x1)).abs()))
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    let inverse: Vec<f64> = xs.iter().map(|&x| 1.0 / exact_gradient(x)).collect();
    let inv_defect = inverse.windows(3).map(|w| w[1] - 0.5 * (w[0] + w[2])).fold(f64::MIN, f64::max).max(0.0);
    let gap = concavity_gap(|x| Ok(exact_gradient(x)))?;
    let numeric_gap = concavity_gap(numeric)?;

    let metrics = vec![
        Metric::at_most("max_rel_error", max_rel, max_err_tol),
        Metric::at_most("formula_error", formula_err, conv_tol),
        Metric::at_most("inverse_convexity_defect", inv_defect, conv_tol),
        Metric::above("concavity_gap", gap, 0.0),
        Metric::above("numeric_concavity_gap", numeric_gap, 0.0),
    ];
    let mut report = CheckReport::from_metrics(ID, metrics);
    report.notes.push(format!(
        "|grad v| at x1 = -1, 0, 1: {}, {}, {}; midpoint concavity would need {} <= {}",
        exact_gradient(-1.0),
        exact_gradient(0.0),
        exact_gradient(1.0),
        exact_gradient(0.0),
        0.5 * (exact_gradient(-1.0) + exact_gradient(1.0))
    ));
    ctx.csv(&mut report.artifacts, "counterexample.csv", &rows, true)?;
    Ok(report)
}
