use std::f64::consts::TAU;

use bernoulli_core::bernoulli::{radial_radius, residual_report_against, solve_minimal_usc, FacetStats};
use bernoulli_core::geom::{hausdorff, support_excess};
use bernoulli_core::{Anisotropy, ConvexPolygon, Direction, Point, SolverParams};
use serde::{Deserialize, Serialize};

use super::{tag, CheckContext};
use crate::error::Result;
use crate::io;
use crate::report::{CheckReport, Metric};

const ID: &str = "monotone_usc";

/// Disk core with a constant base speed and one upward jump.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MonotoneUscConfig {
    pub h: f64,
    pub radius: f64,
    pub segments: usize,
    pub base: f64,
    pub jump: f64,
    pub jump_angle: f64,
    pub schedule: Vec<f64>,
    /// Angular grid for the approximation invariants.
    pub grid: usize,
}

impl Default for MonotoneUscConfig {
    fn default() -> Self {
        Self {
            h: 0.02,
            radius: 1.0,
            segments: 256,
            base: 1.0,
            jump: 2.0,
            jump_angle: 0.0,
            schedule: vec![2.0, 4.0, 8.0, 16.0],
            grid: 10_000,
        }
    }
}

fn geodesic(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

/// Largest violation of `Q^j ≥ Q`, `Q^j ≥ Q^{j'}` for `j < j'` and the `j`-Lipschitz bound
/// between neighbouring grid angles.
fn approximation_defect(q: &Anisotropy, schedule: &[f64], n: usize) -> Result<f64> {
    let stages = schedule.iter().map(|&j| q.continuous_approx(j)).collect::<std::result::Result<Vec<_>, _>>()?;
    let angles: Vec<f64> = (0..n).map(|k| TAU * k as f64 / n as f64).collect();
    let mut worst: f64 = 0.0;
    for (i, qj) in stages.iter().enumerate() {
        let j = schedule[i];
        let vals: Vec<f64> = angles.iter().map(|&t| qj.eval_angle(t)).collect();
        for (k, &t) in angles.iter().enumerate() {
            worst = worst.max(q.eval_angle(t) - vals[k]);
            if let Some(next) = stages.get(i + 1) {
                worst = worst.max(next.eval_angle(t) - vals[k]);
            }
            let (t2, v2) = (angles[(k + 1) % n], vals[(k + 1) % n]);
            worst = worst.max((vals[k] - v2).abs() - j * geodesic(t, t2));
        }
    }
    Ok(worst)
}

/// Runs the monotone approximation and checks increasing supports, a shrinking tail,
/// the radial sandwich and the limit residuals away from the jump.
///
/// Facets whose normal lies within `(q_max - q_min) / j_last` of a jump are where the
/// last approximation still differs from `Q`; they are excluded from the residual test.
pub fn check_monotone_usc(cfg: &MonotoneUscConfig, ctx: &CheckContext) -> Result<CheckReport> {
    let core = ConvexPolygon::regular(cfg.segments, Point::default(), cfg.radius, 0.0)?;
    let q = Anisotropy::usc_jumps(vec![(0.0, cfg.base)], vec![(cfg.jump_angle, cfg.jump)])?;
    let params = SolverParams::new(cfg.h, &q);
    let (stages, limit) = solve_minimal_usc(&core, &q, &cfg.schedule, &params)?;

    let inclusion_slack = ctx.thresholds.get("inclusion_slack", cfg.h);
    let sandwich_slack = ctx.thresholds.get("sandwich_slack", cfg.h + params.fb_tol * core.diameter());
    let approx_tol = ctx.thresholds.get("approx_tol", 1e-12);

    let bodies: Vec<&ConvexPolygon> = stages.iter().map(|s| s.boundary()).collect();
    let inclusion = bodies.windows(2).map(|w| support_excess(w[0], w[1])).fold(f64::NEG_INFINITY, f64::max);
    let to_last: Vec<f64> = bodies.iter().map(|b| hausdorff(b, limit.boundary())).collect();
    let gaps: Vec<f64> = bodies.windows(2).map(|w| hausdorff(w[0], w[1])).collect();
    let not_decreasing = to_last.windows(2).filter(|w| w[1] >= w[0]).count();
    let gap_increases = gaps.windows(2).filter(|w| w[1] > w[0]).count();

    let (lo, hi) = q.bounds();
    let outer = ConvexPolygon::regular(4096, Point::default(), radial_radius(cfg.radius, lo), 0.0)?;
    let inner = ConvexPolygon::regular(4096, Point::default(), radial_radius(cfg.radius, hi), 0.0)?;
    let sandwich_out = bodies.iter().map(|b| support_excess(b, &outer)).fold(f64::NEG_INFINITY, f64::max);
    let sandwich_in = bodies.iter().map(|b| support_excess(&inner, b)).fold(f64::NEG_INFINITY, f64::max);

    let j_last = *cfg.schedule.last().expect("solve_minimal_usc rejects empty schedules");
    let band = (hi - lo) / j_last;
    let jump_dirs: Vec<Direction> = q.jump_angles().into_iter().map(Direction::new).collect();
    let rep = residual_report_against(&limit, &q)?;
    let (far, near): (Vec<&FacetStats>, Vec<&FacetStats>) =
        rep.facets.iter().partition(|f| jump_dirs.iter().all(|d| f.normal.angle_to(*d) > band));
    let sub = far.iter().filter(|f| f.sub_violation).count();
    let sup = far.iter().filter(|f| f.super_violation).count();

    let metrics = vec![
        Metric::at_most("inclusion_excess", inclusion, inclusion_slack),
        Metric::at_most("distance_to_last_not_decreasing", not_decreasing as f64, 0.0),
        Metric::at_most("tail_gap_increases", gap_increases as f64, 0.0),
        Metric::at_most("sandwich_outer_excess", sandwich_out, sandwich_slack),
        Metric::at_most("sandwich_inner_excess", sandwich_in, sandwich_slack),
        Metric::at_least("limit_facets_away_from_jump", far.len() as f64, 1.0),
        Metric::at_most("limit_sub_violations", sub as f64, 0.0),
        Metric::at_most("limit_super_violations", sup as f64, 0.0),
        Metric::at_most("approximation_defect", approximation_defect(&q, &cfg.schedule, cfg.grid)?, approx_tol),
    ];
    let mut report = CheckReport::from_metrics(ID, metrics);
    report.notes.push(format!("hausdorff to the last stage: {to_last:?}"));
    report.notes.push(format!("consecutive stage distances: {gaps:?}"));
    let jump_facets = near.iter().filter(|f| jump_dirs.iter().any(|d| f.normal.angle_to(*d) <= 1e-9)).count();
    report.notes.push(format!(
        "{} facets within {band} rad of a jump excluded ({} with the jump normal itself, {} of those flagged)",
        near.len(),
        jump_facets,
        near.iter()
            .filter(|f| jump_dirs.iter().any(|d| f.normal.angle_to(*d) <= 1e-9))
            .filter(|f| f.sub_violation || f.super_violation)
            .count()
    ));
    for (s, j) in stages.iter().zip(&cfg.schedule) {
        ctx.csv(&mut report.artifacts, &format!("stage_j{}.csv", tag(*j)), &io::polygon_rows(s.boundary()), false)?;
    }
    ctx.csv(&mut report.artifacts, "limit_trace.csv", &io::trace_rows(limit.trace()), true)?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn approximation_invariants_on_a_coarse_grid() {
        let q = Anisotropy::usc_jumps(vec![(0.0, 1.0)], vec![(0.0, 2.0)]).unwrap();
        assert!(approximation_defect(&q, &[2.0, 4.0, 8.0, 16.0], 1000).unwrap() <= 1e-12);
    }
}
