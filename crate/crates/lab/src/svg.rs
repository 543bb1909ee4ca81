//! SVG plots: bodies as closed paths, level lines and polar curves as polylines.

use std::fmt::Write as _;

use bernoulli_core::{ConvexPolygon, Point};

const WIDTH: f64 = 960.0;
const HEIGHT: f64 = 480.0;
const PAD: f64 = 20.0;

/// Contents of a plot. Only bodies are drawn as closed paths.
#[derive(Clone, Debug, Default)]
pub struct Scene {
    /// `(css class, label, body)`.
    pub bodies: Vec<(String, String, ConvexPolygon)>,
    /// `(level, vertices)`, drawn as closed polylines.
    pub levels: Vec<(f64, Vec<Point>)>,
    /// `(label, (theta, value) samples)` drawn as polar curves.
    pub polar_curves: Vec<(String, Vec<(f64, f64)>)>,
    /// Boundary gradient samples `(normal angle, |∇u|)` drawn as dots.
    pub polar_points: Vec<(f64, f64)>,
}

struct Frame {
    lo: Point,
    scale: f64,
}

impl Frame {
    fn fit(points: impl Iterator<Item = Point>) -> Self {
        let (mut lo, mut hi) =
            (Point::new(f64::INFINITY, f64::INFINITY), Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY));
        for p in points {
            lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        if !lo.x.is_finite() {
            return Self { lo: Point::new(-1.0, -1.0), scale: (HEIGHT - 2.0 * PAD) / 2.0 };
        }
        let span = (hi.x - lo.x).max(hi.y - lo.y).max(1e-12);
        Self { lo, scale: (HEIGHT - 2.0 * PAD) / span }
    }

    /// Left panel, y axis pointing up.
    fn map(&self, p: Point) -> (f64, f64) {
        (PAD + (p.x - self.lo.x) * self.scale, HEIGHT - PAD - (p.y - self.lo.y) * self.scale)
    }
}

fn polyline(out: &mut String, class: &str, extra: &str, pts: impl Iterator<Item = (f64, f64)>) {
    let coords: Vec<String> = pts.map(|(x, y)| format!("{x:.3},{y:.3}")).collect();
    let _ = writeln!(out, r#"<polyline class="{class}"{extra} points="{}"/>"#, coords.join(" "));
}

pub fn render(scene: &Scene) -> String {
    let frame = Frame::fit(scene.bodies.iter().flat_map(|(_, _, b)| b.vertices().iter().copied()));
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    out.push_str(
        "<style>path{fill:none;stroke-width:1.5}.inner{stroke:#444;fill:#ddd}.boundary{stroke:#c22}\
         .stage{stroke:#26c}.level{fill:none;stroke:#999;stroke-width:0.7}\
         .polar-q{fill:none;stroke:#2a2}.polar-axis{fill:none;stroke:#ccc}.grad{fill:#c22}</style>\n",
    );
    let _ = writeln!(out, r#"<g class="geometry">"#);
    for (class, label, body) in &scene.bodies {
        let mut d = String::new();
        for (k, p) in body.vertices().iter().enumerate() {
            let (x, y) = frame.map(*p);
            let _ = write!(d, "{}{x:.3},{y:.3} ", if k == 0 { "M" } else { "L" });
        }
        d.push('Z');
        let _ = writeln!(out, r#"<path class="{class}" data-label="{label}" d="{d}"/>"#);
    }
    for (t, pts) in &scene.levels {
        let closed = pts.iter().chain(pts.first()).map(|p| frame.map(*p));
        polyline(&mut out, "level", &format!(r#" data-level="{t}""#), closed);
    }
    let _ = writeln!(out, "</g>");

    // Polar panel on the right.
    let (cx, cy) = (WIDTH * 0.75, HEIGHT * 0.5);
    let r_max = scene
        .polar_curves
        .iter()
        .flat_map(|(_, c)| c.iter().map(|s| s.1))
        .chain(scene.polar_points.iter().map(|s| s.1))
        .fold(0.0, f64::max)
        .max(1e-12);
    let scale = (HEIGHT * 0.5 - PAD) / r_max;
    let at = |theta: f64, r: f64| (cx + r * scale * theta.cos(), cy - r * scale * theta.sin());
    let _ = writeln!(out, r#"<g class="polar" data-rmax="{r_max}">"#);
    let _ = writeln!(out, r#"<circle class="polar-axis" cx="{cx}" cy="{cy}" r="{:.3}"/>"#, r_max * scale);
    for (label, curve) in &scene.polar_curves {
        let closed = curve.iter().chain(curve.first()).map(|&(t, r)| at(t, r));
        polyline(&mut out, "polar-q", &format!(r#" data-label="{label}""#), closed);
    }
    for &(t, g) in &scene.polar_points {
        let (x, y) = at(t, g);
        let _ = writeln!(out, r#"<circle class="grad" cx="{x:.3}" cy="{y:.3}" r="1.5"/>"#);
    }
    let _ = writeln!(out, "</g>\n</svg>");
    out
}

/// Number of closed paths in an SVG produced by [`render`].
pub fn closed_paths(svg: &str) -> usize {
    svg.lines().filter(|l| l.starts_with("<path") && l.contains("Z\"")).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bodies_are_the_only_closed_paths() {
        let disk = |r: f64| ConvexPolygon::regular(32, Point::default(), r, 0.0).unwrap();
        let scene = Scene {
            bodies: vec![("inner".into(), "K".into(), disk(1.0)), ("boundary".into(), "V".into(), disk(1.76))],
            levels: vec![(0.5, disk(1.3).vertices().to_vec())],
            polar_curves: vec![("Q".into(), vec![(0.0, 1.0), (2.0, 1.0), (4.0, 1.0)])],
            polar_points: vec![(0.5, 1.01)],
        };
        let svg = render(&scene);
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
        assert_eq!(closed_paths(&svg), 2);
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert_eq!(svg.matches(r#"class="grad""#).count(), 1);
    }

    #[test]
    fn geometry_keeps_aspect_ratio() {
        let f = Frame::fit([Point::new(0.0, 0.0), Point::new(2.0, 1.0)].into_iter());
        let (x0, y0) = f.map(Point::new(0.0, 0.0));
        let (x1, y1) = f.map(Point::new(1.0, 1.0));
        assert!(((x1 - x0) - (y0 - y1)).abs() < 1e-12);
    }
}
