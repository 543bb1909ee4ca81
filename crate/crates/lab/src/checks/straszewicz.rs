use std::f64::consts::TAU;

use bernoulli_core::{ConvexPolygon, Point};
use serde::{Deserialize, Serialize};

use super::CheckContext;
use crate::error::Result;
use crate::report::{CheckReport, Metric};

const ID: &str = "straszewicz";

/// Hull of the unit disk (as a regular `N`-gon) and the point `(apex, 0)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct StraszewiczConfig {
    pub resolutions: Vec<usize>,
    pub apex: f64,
}

impl Default for StraszewiczConfig {
    fn default() -> Self {
        Self { resolutions: vec![64, 256, 1024], apex: 2.0 }
    }
}

fn disk_point_hull(n: usize, apex: f64) -> Result<ConvexPolygon> {
    let mut pts: Vec<Point> = (0..n)
        .map(|k| {
            let t = TAU * k as f64 / n as f64;
            Point::new(t.cos(), t.sin())
        })
        .collect();
    pts.push(Point::new(apex, 0.0));
    Ok(ConvexPolygon::hull(&pts)?)
}

/// Largest distance from a target point to its nearest exposed point.
fn distance_to_exposed(targets: &[Point], exposed: &[Point]) -> f64 {
    targets.iter().map(|t| exposed.iter().map(|p| p.dist(*t)).fold(f64::INFINITY, f64::min)).fold(0.0, f64::max)
}

/// The tangency points of the limit body are extreme but not exposed; exposed vertices
/// of the polygonal approximations must approach them at the rate of the arc spacing.
pub fn check_straszewicz(cfg: &StraszewiczConfig, ctx: &CheckContext) -> Result<CheckReport> {
    let c = ctx.thresholds.get("constant", 2.0 * TAU);
    let angle = (1.0 / cfg.apex).acos();
    let tangency = [Point::new(angle.cos(), angle.sin()), Point::new(angle.cos(), -angle.sin())];
    let mut metrics = Vec::new();
    let mut rows = Vec::new();
    let mut dists = Vec::new();
    for &n in &cfg.resolutions {
        let body = disk_point_hull(n, cfg.apex)?;
        let exposed = body.exposed_points_default();
        let d = distance_to_exposed(&tangency, &exposed);
        metrics.push(Metric::at_most(format!("distance[N={n}]"), d, c / n as f64));
        rows.extend(exposed.iter().map(|p| (n, p.x, p.y)));
        dists.push(d);
    }
    let stalls = dists.windows(2).filter(|w| w[1] >= w[0]).count();
    metrics.push(Metric::at_most("distance_not_decreasing", stalls as f64, 0.0));
    // On a polygon every extreme point is exposed.
    let hexagon = ConvexPolygon::regular(6, Point::new(0.3, -0.2), 1.5, 0.1)?;
    let poly_d = distance_to_exposed(&hexagon.extreme_points(), &hexagon.exposed_points_default());
    metrics.push(Metric::at_most("polygon_distance", poly_d, 0.0));

    let mut report = CheckReport::from_metrics(ID, metrics);
    report.notes.push(format!("bound C/N with C = {c}"));
    ctx.csv(&mut report.artifacts, "exposed_points.csv", &rows, false)?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn apex_is_exposed() {
        let body = disk_point_hull(64, 2.0).unwrap();
        assert!(body.exposed_points_default().contains(&Point::new(2.0, 0.0)));
        assert_eq!(distance_to_exposed(&[Point::new(2.0, 0.0)], &body.exposed_points_default()), 0.0);
    }
}
