//! CSV formats for polygons, fields, boundary traces, polar curves and level lines.
//!
//! Polygons are headerless `x,y` lines in counter-clockwise order; every other table has
//! a header row. Floats are written in shortest round-trip form, so equal inputs give
//! byte-identical files.

use std::f64::consts::TAU;
use std::path::Path;

use bernoulli_core::{Anisotropy, BoundaryTrace, ConvexPolygon, Direction, HarmonicField, Point};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldRow {
    pub x: f64,
    pub y: f64,
    pub value: f64,
}

/// One boundary gradient sample with its inner normal.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub x: f64,
    pub y: f64,
    pub nx: f64,
    pub ny: f64,
    pub grad: f64,
}

impl TraceRow {
    /// Angle of the inner normal in `[0, 2π)`.
    pub fn normal_angle(&self) -> f64 {
        Direction::from_vector(Point::new(self.nx, self.ny)).map_or(0.0, Direction::theta)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolarRow {
    pub theta: f64,
    pub value: f64,
}

/// A vertex of the level line `{v = level}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelRow {
    pub level: f64,
    pub x: f64,
    pub y: f64,
}

pub fn write_rows<T: Serialize>(path: &Path, rows: &[T], header: bool) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(header).from_path(path).map_err(|e| LabError::format(path, e))?;
    for r in rows {
        w.serialize(r).map_err(|e| LabError::format(path, e))?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_rows<T: DeserializeOwned>(path: &Path, header: bool) -> Result<Vec<T>> {
    let mut r = csv::ReaderBuilder::new()
        .has_headers(header)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| LabError::format(path, e))?;
    r.deserialize().map(|row| row.map_err(|e| LabError::format(path, e))).collect()
}

pub fn polygon_rows(poly: &ConvexPolygon) -> Vec<(f64, f64)> {
    poly.vertices().iter().map(|p| (p.x, p.y)).collect()
}

pub fn write_polygon(path: &Path, poly: &ConvexPolygon) -> Result<()> {
    write_rows(path, &polygon_rows(poly), false)
}

pub fn read_polygon(path: &Path) -> Result<ConvexPolygon> {
    let rows: Vec<(f64, f64)> = read_rows(path, false)?;
    let pts = rows.into_iter().map(|(x, y)| Point::new(x, y)).collect();
    Ok(ConvexPolygon::new(pts)?)
}

/// Values at every node of the solver grid, row by row: zero outside the outer body and
/// one inside the inner body.
pub fn field_rows(field: &HarmonicField) -> Vec<FieldRow> {
    let g = field.grid();
    let mut rows = Vec::with_capacity(g.nx * g.ny);
    for j in 0..g.ny {
        for i in 0..g.nx {
            let p = g.node(i, j);
            rows.push(FieldRow { x: p.x, y: p.y, value: field.value_at(p) });
        }
    }
    rows
}

pub fn trace_rows(trace: &BoundaryTrace) -> Vec<TraceRow> {
    trace
        .samples
        .iter()
        .map(|s| {
            let n = s.normal.vector();
            TraceRow { x: s.point.x, y: s.point.y, nx: n.x, ny: n.y, grad: s.grad_mag }
        })
        .collect()
}

/// `Q` sampled at `n` equally spaced angles starting at zero.
pub fn polar_rows(q: &Anisotropy, n: usize) -> Vec<PolarRow> {
    (0..n)
        .map(|k| {
            let theta = TAU * k as f64 / n as f64;
            PolarRow { theta, value: q.eval_angle(theta) }
        })
        .collect()
}

/// Level lines traced along `rays` rays from the centroid of the inner body.
pub fn level_rows(field: &HarmonicField, levels: &[f64], rays: usize) -> Vec<LevelRow> {
    let c = field.inner().centroid();
    levels
        .iter()
        .flat_map(|&t| field.level_line(t, c, rays).into_iter().map(move |p| LevelRow { level: t, x: p.x, y: p.y }))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polygon_round_trip_is_exact() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.csv");
        let poly = ConvexPolygon::regular(7, Point::new(0.1, -0.3), 1.0 / 3.0, 0.2).unwrap();
        write_polygon(&path, &poly).unwrap();
        assert_eq!(read_polygon(&path).unwrap(), poly);
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), 7);
        assert!(text.lines().all(|l| l.split(',').count() == 2));
    }

    #[test]
    fn non_convex_polygon_file_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.csv");
        std::fs::write(&path, "0,0\n2,0\n1,0.2\n1,2\n").unwrap();
        assert!(matches!(read_polygon(&path), Err(LabError::Core(_))));
        std::fs::write(&path, "0,0\n1,zero\n").unwrap();
        assert!(matches!(read_polygon(&path), Err(LabError::Format { .. })));
    }

    #[test]
    fn tables_carry_headers() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("q.csv");
        let q = Anisotropy::constant(2.0).unwrap();
        write_rows(&path, &polar_rows(&q, 8), true).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().next(), Some("theta,value"));
        let back: Vec<PolarRow> = read_rows(&path, true).unwrap();
        assert_eq!(back, polar_rows(&q, 8));
    }

    #[test]
    fn trace_rows_store_unit_normals() {
        let row = TraceRow { x: 0.0, y: 0.0, nx: 0.0, ny: -1.0, grad: 1.0 };
        assert!((row.normal_angle() - 1.5 * std::f64::consts::PI).abs() < 1e-15);
    }
}
