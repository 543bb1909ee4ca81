use std::f64::consts::FRAC_PI_2;

use bernoulli_core::harmonic::solve_dirichlet;
use bernoulli_core::{ConvexPolygon, Direction, Facet, HarmonicField};
use serde::{Deserialize, Serialize};

use super::{tag, CheckContext};
use crate::error::Result;
use crate::io::TraceRow;
use crate::report::{CheckReport, Metric};

const ID: &str = "facet_convexity";

/// Square core inside a square container; the facet is the container's bottom edge.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FacetConvexityConfig {
    pub inner_half_width: f64,
    pub outer_half_width: f64,
    /// Refinement sweep, coarse to fine.
    pub h: Vec<f64>,
    /// Spacing of the midpoint-convexity triples.
    pub spacing: f64,
    /// Number of levels in the super-level set sweep.
    pub taus: usize,
}

impl Default for FacetConvexityConfig {
    fn default() -> Self {
        Self { inner_half_width: 0.5, outer_half_width: 2.0, h: vec![0.04, 0.02, 0.01], spacing: 0.1, taus: 20 }
    }
}

/// Largest midpoint-convexity defect `f(x) - (f(x-δ) + f(x+δ))/2` of `f = 1/g` over
/// consecutive triples, scaled by `max g` so that it is relative to the facet's gradient
/// scale. Negative when every triple is strictly convex.
pub(crate) fn signed_inverse_defect(g: &[f64]) -> f64 {
    let g_max = g.iter().copied().fold(0.0, f64::max);
    g.windows(3).map(|w| (1.0 / w[1] - 0.5 * (1.0 / w[0] + 1.0 / w[2])) * g_max).fold(f64::NEG_INFINITY, f64::max)
}

/// Positive part of [`signed_inverse_defect`].
pub(crate) fn inverse_convexity_defect(g: &[f64]) -> f64 {
    signed_inverse_defect(g).max(0.0)
}

/// Number of levels `τ` for which `{g > τ}` is not a single run of consecutive samples.
pub(crate) fn split_superlevel_sets(g: &[f64], taus: &[f64]) -> usize {
    taus.iter()
        .filter(|&&tau| {
            let runs = g.windows(2).filter(|w| w[0] <= tau && w[1] > tau).count() + usize::from(g[0] > tau);
            runs > 1
        })
        .count()
}

/// `n` levels at the cell centres of `(min g, max g)`.
fn tau_sweep(g: &[f64], n: usize) -> Vec<f64> {
    let lo = g.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = g.iter().copied().fold(0.0, f64::max);
    (0..n).map(|i| lo + (hi - lo) * (i as f64 + 0.5) / n as f64).collect()
}

/// Arc-length positions in `[margin, len - margin]` with the given spacing, centred.
fn positions(len: f64, margin: f64, spacing: f64) -> Vec<f64> {
    let span = len - 2.0 * margin;
    if span < 0.0 {
        return Vec::new();
    }
    let m = (span / spacing + 1e-9).floor() as usize;
    let s0 = 0.5 * (len - m as f64 * spacing);
    (0..=m).map(|k| s0 + k as f64 * spacing).collect()
}

fn sample(field: &HarmonicField, facet: &Facet, s: &[f64]) -> Result<Vec<TraceRow>> {
    let len = facet.length();
    let n = facet.normal.vector();
    s.iter()
        .map(|&s| {
            let p = facet.point_at(s / len);
            let grad = field.normal_gradient(p, facet.normal)?;
            Ok(TraceRow { x: p.x, y: p.y, nx: n.x, ny: n.y, grad })
        })
        .collect()
}

/// Solves the square-in-square Dirichlet problem on a refinement sweep and tests
/// midpoint convexity of `1/|∇v|` and the interval structure of `{|∇v| > τ}` along the
/// bottom facet. Triples within `4 max h` of the facet ends are excluded.
pub fn check_facet_convexity(cfg: &FacetConvexityConfig, ctx: &CheckContext) -> Result<CheckReport> {
    let (a, b) = (cfg.inner_half_width, cfg.outer_half_width);
    let inner = ConvexPolygon::rectangle(-a, -a, a, a)?;
    let outer = ConvexPolygon::rectangle(-b, -b, b, b)?;
    let facet = outer.facet_of(Direction::new(FRAC_PI_2));
    let h_max = cfg.h.iter().copied().fold(0.0, f64::max);
    if cfg.h.is_empty() || facet.length() < 8.0 * h_max {
        return Ok(CheckReport::skipped(
            ID,
            format!("facet length {} is shorter than 8h = {}", facet.length(), 8.0 * h_max),
        ));
    }
    let tol = ctx.thresholds.get("tol_conv", 1e-3);
    let margin = 4.0 * h_max;
    let triples = positions(facet.length(), margin, cfg.spacing);

    let mut metrics = Vec::new();
    let mut artifacts = Vec::new();
    let mut defects = Vec::new();
    let mut min_grad = f64::INFINITY;
    let mut margins = Vec::new();
    for &h in &cfg.h {
        let field = solve_dirichlet(&inner, &outer, h)?;
        let g: Vec<f64> = sample(&field, &facet, &triples)?.iter().map(|r| r.grad).collect();
        let defect = inverse_convexity_defect(&g);
        margins.push(format!("h={}: {:.3e}", tag(h), signed_inverse_defect(&g)));
        metrics.push(Metric::at_most(format!("max_defect[h={}]", tag(h)), defect, tol));
        defects.push(defect);

        let dense = sample(&field, &facet, &positions(facet.length(), margin, h))?;
        let gd: Vec<f64> = dense.iter().map(|r| r.grad).collect();
        let split = split_superlevel_sets(&gd, &tau_sweep(&gd, cfg.taus));
        metrics.push(Metric::at_most(format!("split_superlevel_sets[h={}]", tag(h)), split as f64, 0.0));
        min_grad = gd.iter().copied().fold(min_grad, f64::min);
        ctx.csv(&mut artifacts, &format!("facet_h{}.csv", tag(h)), &dense, true)?;
    }
    let increases = defects.windows(2).filter(|w| w[1] > w[0]).count();
    metrics.push(Metric::at_most("defect_increases_under_refinement", increases as f64, 0.0));
    metrics.push(Metric::above("min_grad", min_grad, 0.0));

    let mut report = CheckReport::from_metrics(ID, metrics);
    report.notes.push(format!(
        "{} triples spaced {} on the facet, ends trimmed by {margin}; {} levels per sweep",
        triples.len(),
        cfg.spacing,
        cfg.taus
    ));
    report.notes.push(format!("largest signed defect per h (negative is strictly convex): {}", margins.join(", ")));
    report.artifacts = artifacts;
    Ok(report)
}
