//! Solution bundles: one directory per solve with CSV data, a JSON report and a plot.
//!
//! A monotone approximation run writes one bundle per stage (`stage_j<j>/`) and a
//! `limit/` bundle whose report is taken against the original anisotropy.

use std::path::{Path, PathBuf};

use bernoulli_core::bernoulli::residual_report_against;
use bernoulli_core::{Anisotropy, ConvexPolygon, FreeBoundarySolution, Point};
use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::io::{self, LevelRow, PolarRow, TraceRow};
use crate::svg::{self, Scene};

pub const BOUNDARY: &str = "boundary.csv";
pub const INNER: &str = "inner.csv";
pub const TRACE: &str = "trace.csv";
pub const FIELD: &str = "field.csv";
pub const ANISOTROPY: &str = "anisotropy.csv";
pub const LEVELS: &str = "levels.csv";
pub const REPORT: &str = "report.json";
pub const PLOT: &str = "plot.svg";

/// Levels traced into `levels.csv`.
pub const LEVEL_VALUES: [f64; 3] = [0.25, 0.5, 0.75];
const LEVEL_RAYS: usize = 256;
const POLAR_SAMPLES: usize = 720;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FacetRecord {
    pub start: [f64; 2],
    pub end: [f64; 2],
    /// Inner normal angle in radians.
    pub normal: f64,
    pub q_sub: f64,
    pub q_super: f64,
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    pub samples: usize,
    pub sub_violation: bool,
    pub super_violation: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BundleReport {
    pub converged: bool,
    pub iterations: usize,
    /// Approximation parameter of a stage bundle.
    pub j: Option<f64>,
    pub h: f64,
    pub fb_tol: f64,
    pub step0: f64,
    pub smoothing: f64,
    pub max_iter: usize,
    pub r_reg: f64,
    pub q_min: f64,
    pub q_max: f64,
    /// Largest relative residual over facet-interior samples.
    pub max_residual: f64,
    pub history: Vec<f64>,
    pub sub_violations: usize,
    pub super_violations: usize,
    pub corners: usize,
    pub facets: Vec<FacetRecord>,
}

/// Writes a bundle for `sol`, with residual statistics against `q` (the solution's own
/// anisotropy for ordinary solves).
pub fn write_bundle(dir: &Path, sol: &FreeBoundarySolution, q: &Anisotropy, j: Option<f64>) -> Result<BundleReport> {
    std::fs::create_dir_all(dir)?;
    io::write_polygon(&dir.join(BOUNDARY), sol.boundary())?;
    io::write_polygon(&dir.join(INNER), sol.core())?;
    io::write_rows(&dir.join(TRACE), &io::trace_rows(sol.trace()), true)?;
    io::write_rows(&dir.join(FIELD), &io::field_rows(sol.field()), true)?;
    io::write_rows(&dir.join(ANISOTROPY), &io::polar_rows(q, POLAR_SAMPLES), true)?;
    io::write_rows(&dir.join(LEVELS), &io::level_rows(sol.field(), &LEVEL_VALUES, LEVEL_RAYS), true)?;
    let rep = residual_report_against(sol, q)?;
    let p = sol.params();
    let report = BundleReport {
        converged: sol.converged(),
        iterations: sol.iterations(),
        j,
        h: p.h,
        fb_tol: p.fb_tol,
        step0: p.step0,
        smoothing: p.smoothing,
        max_iter: p.max_iter,
        r_reg: p.r_reg,
        q_min: q.q_min(),
        q_max: q.q_max(),
        max_residual: sol.max_residual(),
        history: sol.history().to_vec(),
        sub_violations: rep.sub_violations(),
        super_violations: rep.super_violations(),
        corners: rep.corners,
        facets: rep
            .facets
            .iter()
            .map(|f| FacetRecord {
                start: [f.start.x, f.start.y],
                end: [f.end.x, f.end.y],
                normal: f.normal.theta(),
                q_sub: f.q_sub,
                q_super: f.q_super,
                min: f.min,
                max: f.max,
                mean: f.mean,
                samples: f.samples,
                sub_violation: f.sub_violation,
                super_violation: f.super_violation,
            })
            .collect(),
    };
    std::fs::write(dir.join(REPORT), serde_json::to_string_pretty(&report)?)?;
    plot(dir)?;
    Ok(report)
}

pub fn stage_dir(dir: &Path, j: f64) -> PathBuf {
    dir.join(format!("stage_j{j}"))
}

/// Stage bundles plus the limit bundle of a monotone approximation run.
pub fn write_usc_bundles(
    dir: &Path,
    q: &Anisotropy,
    schedule: &[f64],
    stages: &[FreeBoundarySolution],
    limit: &FreeBoundarySolution,
) -> Result<()> {
    for (s, &j) in stages.iter().zip(schedule) {
        write_bundle(&stage_dir(dir, j), s, s.q_used(), Some(j))?;
    }
    write_bundle(&dir.join("limit"), limit, q, schedule.last().copied())?;
    plot(dir)?;
    Ok(())
}

/// Data of a bundle directory as read back from disk.
#[derive(Clone, Debug)]
pub struct Bundle {
    pub dir: PathBuf,
    pub boundary: ConvexPolygon,
    pub inner: ConvexPolygon,
    pub trace: Vec<TraceRow>,
    pub anisotropy: Vec<PolarRow>,
    pub levels: Vec<LevelRow>,
    pub report: BundleReport,
}

pub fn read_bundle(dir: &Path) -> Result<Bundle> {
    if !dir.join(BOUNDARY).is_file() {
        return Err(LabError::BundleMissing(dir.to_path_buf()));
    }
    let report_path = dir.join(REPORT);
    let report =
        serde_json::from_str(&std::fs::read_to_string(&report_path)?).map_err(|e| LabError::format(&report_path, e))?;
    Ok(Bundle {
        dir: dir.to_path_buf(),
        boundary: io::read_polygon(&dir.join(BOUNDARY))?,
        inner: io::read_polygon(&dir.join(INNER))?,
        trace: io::read_rows(&dir.join(TRACE), true)?,
        anisotropy: io::read_rows(&dir.join(ANISOTROPY), true)?,
        levels: io::read_rows(&dir.join(LEVELS), true)?,
        report,
    })
}

/// Stage bundles of a run directory, ordered by `j`.
pub fn read_stages(dir: &Path) -> Result<Vec<Bundle>> {
    let mut stages = Vec::new();
    if dir.is_dir() {
        for entry in std::fs::read_dir(dir)? {
            let path = entry?.path();
            let is_stage = path.file_name().and_then(|n| n.to_str()).is_some_and(|n| n.starts_with("stage_j"));
            if is_stage && path.join(BOUNDARY).is_file() {
                stages.push(read_bundle(&path)?);
            }
        }
    }
    stages.sort_by(|a, b| a.report.j.unwrap_or(0.0).total_cmp(&b.report.j.unwrap_or(0.0)));
    Ok(stages)
}

fn levels(rows: &[LevelRow]) -> Vec<(f64, Vec<Point>)> {
    let mut out: Vec<(f64, Vec<Point>)> = Vec::new();
    for r in rows {
        match out.last_mut() {
            Some((t, pts)) if *t == r.level => pts.push(Point::new(r.x, r.y)),
            _ => out.push((r.level, vec![Point::new(r.x, r.y)])),
        }
    }
    out
}

fn polar(rows: &[PolarRow]) -> Vec<(f64, f64)> {
    rows.iter().map(|r| (r.theta, r.value)).collect()
}

/// Plot of a bundle, or of a run directory holding stage bundles (the stages are drawn as
/// nested boundaries).
pub fn render_plot(dir: &Path) -> Result<String> {
    let scene = if dir.join(BOUNDARY).is_file() {
        let b = read_bundle(dir)?;
        Scene {
            bodies: vec![
                ("inner".into(), "K".into(), b.inner.clone()),
                ("boundary".into(), "free boundary".into(), b.boundary.clone()),
            ],
            levels: levels(&b.levels),
            polar_curves: vec![("Q".into(), polar(&b.anisotropy))],
            polar_points: b.trace.iter().map(|r| (r.normal_angle(), r.grad)).collect(),
        }
    } else {
        let stages = read_stages(dir)?;
        let Some(first) = stages.first() else {
            return Err(LabError::BundleMissing(dir.to_path_buf()));
        };
        let mut bodies = vec![("inner".to_string(), "K".to_string(), first.inner.clone())];
        let mut polar_curves = Vec::new();
        for s in &stages {
            let label = format!("j={}", s.report.j.unwrap_or(f64::NAN));
            bodies.push(("stage".into(), label.clone(), s.boundary.clone()));
            polar_curves.push((label, polar(&s.anisotropy)));
        }
        let last = stages.last().expect("nonempty");
        Scene {
            bodies,
            levels: Vec::new(),
            polar_curves,
            polar_points: last.trace.iter().map(|r| (r.normal_angle(), r.grad)).collect(),
        }
    };
    Ok(svg::render(&scene))
}

/// Writes `plot.svg` into `out`, or into the bundle directory itself.
pub fn plot_to(dir: &Path, out: Option<&Path>) -> Result<PathBuf> {
    let svg = render_plot(dir)?;
    let target = out.unwrap_or(dir);
    std::fs::create_dir_all(target)?;
    let path = target.join(PLOT);
    std::fs::write(&path, svg)?;
    Ok(path)
}

pub fn plot(dir: &Path) -> Result<PathBuf> {
    plot_to(dir, None)
}
