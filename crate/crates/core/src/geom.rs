//! Convex geometry kernel for planar bodies represented as CCW vertex lists.

use alloc::vec::Vec;
use core::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::math::{self, PI, TAU};

/// Absolute tolerance for vertex deduplication and collinearity.
pub const EPS_GEOM: f64 = 1e-9;

/// Default angular resolution used when sampling the circular arcs of a dilation.
pub const DEFAULT_ARC_RES: f64 = TAU / 256.0;

/// Relative tolerance (times the diameter) for declaring a vertex exposed.
pub const EXPOSED_REL_TOL: f64 = 1e-7;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    #[inline]
    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    #[inline]
    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        math::hypot(self.x, self.y)
    }

    #[inline]
    pub fn dist(self, o: Point) -> f64 {
        (self - o).norm()
    }

    /// Counter-clockwise rotation by a right angle.
    #[inline]
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    fn lex_lt(self, o: Point) -> bool {
        self.x < o.x || (self.x == o.x && self.y < o.y)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl AddAssign for Point {
    fn add_assign(&mut self, o: Point) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

impl Div<f64> for Point {
    type Output = Point;
    fn div(self, s: f64) -> Point {
        Point::new(self.x / s, self.y / s)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

/// A unit direction stored by its angle, canonically in `[0, 2π)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Direction(f64);

impl Direction {
    pub fn new(theta: f64) -> Self {
        Direction(math::wrap_angle(theta))
    }

    /// Direction of a nonzero vector; `None` for the zero vector.
    pub fn from_vector(v: Point) -> Option<Self> {
        if v.norm() > 0.0 && v.is_finite() {
            Some(Direction::new(math::atan2(v.y, v.x)))
        } else {
            None
        }
    }

    #[inline]
    pub fn theta(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn vector(self) -> Point {
        Point::new(math::cos(self.0), math::sin(self.0))
    }

    pub fn opposite(self) -> Self {
        Direction::new(self.0 + PI)
    }

    /// Geodesic angle to another direction, in `[0, π]`.
    pub fn angle_to(self, other: Direction) -> f64 {
        math::angle_dist(self.0, other.0)
    }
}

/// An exposed face `{x ∈ body : x·n = min}` with inner normal `n`.
///
/// The endpoints coincide when the face is an exposed point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Facet {
    pub start: Point,
    pub end: Point,
    pub normal: Direction,
}

impl Facet {
    pub fn length(&self) -> f64 {
        self.start.dist(self.end)
    }

    pub fn is_trivial(&self) -> bool {
        self.length() <= EPS_GEOM
    }

    /// Point at parameter `t ∈ [0, 1]` from `start` to `end`.
    pub fn point_at(&self, t: f64) -> Point {
        self.start + (self.end - self.start) * t
    }
}

/// A closed convex polygon with CCW vertices, first vertex lexicographically minimal.
///
/// Collinear vertices are allowed (they are boundary points but not extreme points);
/// vertices closer than [`EPS_GEOM`] are merged on construction.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Point>,
}

impl ConvexPolygon {
    /// Validates and canonicalizes a vertex list. Clockwise input is reversed.
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        if vertices.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidPolygon("non-finite vertex"));
        }
        let mut vs: Vec<Point> = Vec::with_capacity(vertices.len());
        for p in vertices {
            if vs.last().map_or(true, |q: &Point| q.dist(p) > EPS_GEOM) {
                vs.push(p);
            }
        }
        while vs.len() > 1 && vs[0].dist(vs[vs.len() - 1]) <= EPS_GEOM {
            vs.pop();
        }
        if vs.len() < 3 {
            return Err(Error::InvalidPolygon("fewer than three distinct vertices"));
        }
        let area = signed_area(&vs);
        if math::abs(area) <= EPS_GEOM * EPS_GEOM {
            return Err(Error::InvalidPolygon("zero area"));
        }
        if area < 0.0 {
            vs.reverse();
        }
        let n = vs.len();
        let mut turning = 0.0;
        for i in 0..n {
            let e0 = vs[i] - vs[(i + n - 1) % n];
            let e1 = vs[(i + 1) % n] - vs[i];
            let c = e0.cross(e1);
            if c < -EPS_GEOM * e0.norm() * e1.norm() {
                return Err(Error::InvalidPolygon("reflex vertex"));
            }
            turning += math::atan2(c, e0.dot(e1));
        }
        if math::abs(turning - TAU) > 1e-6 {
            return Err(Error::InvalidPolygon("boundary winds more than once"));
        }
        Ok(Self::canonical(vs))
    }

    /// Convex hull of a point cloud (collinear points dropped).
    pub fn hull(points: &[Point]) -> Result<Self> {
        let mut pts: Vec<Point> = points.iter().copied().filter(|p| p.is_finite()).collect();
        pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
        pts.dedup_by(|a, b| a.dist(*b) <= EPS_GEOM);
        if pts.len() < 3 {
            return Err(Error::InvalidPolygon("fewer than three distinct points"));
        }
        let turn = |o: Point, a: Point, b: Point| {
            let (u, v) = (a - o, b - o);
            u.cross(v) > EPS_GEOM * u.norm() * v.norm()
        };
        let mut hull: Vec<Point> = Vec::with_capacity(2 * pts.len());
        for &p in pts.iter() {
            while hull.len() >= 2 && !turn(hull[hull.len() - 2], hull[hull.len() - 1], p) {
                hull.pop();
            }
            hull.push(p);
        }
        let lower = hull.len() + 1;
        for &p in pts.iter().rev().skip(1) {
            while hull.len() >= lower && !turn(hull[hull.len() - 2], hull[hull.len() - 1], p) {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
        ConvexPolygon::new(hull)
    }

    /// Intersection of the half-planes `{x : x·ν_k ≤ h_k}` with outward normals `ν_k`.
    pub fn from_half_planes(planes: &[(Direction, f64)]) -> Result<Self> {
        if planes.iter().any(|(_, h)| !h.is_finite()) {
            return Err(Error::InvalidPolygon("non-finite half-plane offset"));
        }
        let b = 4.0 * planes.iter().map(|(_, h)| math::abs(*h)).fold(1.0, f64::max);
        let mut poly = alloc::vec![Point::new(-b, -b), Point::new(b, -b), Point::new(b, b), Point::new(-b, b),];
        for &(nu, h) in planes {
            let u = nu.vector();
            poly = clip_half_plane(&poly, |p| h - p.dot(u));
            if poly.len() < 3 {
                return Err(Error::InvalidPolygon("empty half-plane intersection"));
            }
        }
        ConvexPolygon::hull(&poly)
    }

    /// Regular `n`-gon inscribed in the circle of the given center and radius.
    pub fn regular(n: usize, center: Point, radius: f64, phase: f64) -> Result<Self> {
        if n < 3 || !(radius > 0.0) {
            return Err(Error::InvalidPolygon("regular polygon needs n >= 3 and radius > 0"));
        }
        let vs = (0..n)
            .map(|k| {
                let t = phase + TAU * k as f64 / n as f64;
                center + Point::new(math::cos(t), math::sin(t)) * radius
            })
            .collect();
        ConvexPolygon::new(vs)
    }

    pub fn rectangle(x0: f64, y0: f64, x1: f64, y1: f64) -> Result<Self> {
        ConvexPolygon::new(alloc::vec![Point::new(x0, y0), Point::new(x1, y0), Point::new(x1, y1), Point::new(x0, y1),])
    }

    fn canonical(mut vs: Vec<Point>) -> Self {
        let mut first = 0;
        for (i, p) in vs.iter().enumerate() {
            if p.lex_lt(vs[first]) {
                first = i;
            }
        }
        vs.rotate_left(first);
        Self { vertices: vs }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> Point {
        self.vertices[i % self.vertices.len()]
    }

    /// Edges as `(start, end)` pairs in CCW order.
    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Inner unit normal of edge `i` (from vertex `i` to `i + 1`).
    pub fn edge_inner_normal(&self, i: usize) -> Point {
        let e = self.vertex(i + 1) - self.vertex(i);
        e.perp() / e.norm()
    }

    /// Inner normal at vertex `i`, bisecting the adjacent edge normals.
    pub fn vertex_inner_normal(&self, i: usize) -> Point {
        let n = self.vertices.len();
        let v = self.edge_inner_normal((i + n - 1) % n) + self.edge_inner_normal(i);
        v / v.norm()
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    pub fn perimeter(&self) -> f64 {
        self.edges().map(|(a, b)| a.dist(b)).sum()
    }

    pub fn centroid(&self) -> Point {
        let mut c = Point::default();
        let mut a2 = 0.0;
        for (p, q) in self.edges() {
            let w = p.cross(q);
            a2 += w;
            c += (p + q) * w;
        }
        c / (3.0 * a2)
    }

    pub fn diameter(&self) -> f64 {
        let mut d: f64 = 0.0;
        for (i, p) in self.vertices.iter().enumerate() {
            for q in &self.vertices[i + 1..] {
                d = d.max(p.dist(*q));
            }
        }
        d
    }

    /// `(min, max)` corners of the axis-aligned bounding box.
    pub fn bounding_box(&self) -> (Point, Point) {
        let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in &self.vertices {
            lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        (lo, hi)
    }

    /// Support function `max_x x·d`.
    pub fn support(&self, dir: Direction) -> f64 {
        let u = dir.vector();
        self.vertices.iter().map(|p| p.dot(u)).fold(f64::NEG_INFINITY, f64::max)
    }

    /// A vertex attaining the support function in direction `dir`.
    pub fn support_point(&self, dir: Direction) -> Point {
        let u = dir.vector();
        let mut best = self.vertices[0];
        for &p in &self.vertices[1..] {
            if p.dot(u) > best.dot(u) {
                best = p;
            }
        }
        best
    }

    /// `true` if `p` lies in the closed body, up to [`EPS_GEOM`].
    pub fn contains(&self, p: Point) -> bool {
        self.edges().all(|(a, b)| {
            let e = b - a;
            e.cross(p - a) >= -EPS_GEOM * e.norm()
        })
    }

    /// Signed distance to the boundary: negative inside, positive outside.
    pub fn signed_distance(&self, p: Point) -> f64 {
        if self.contains(p) {
            -self
                .edges()
                .map(|(a, b)| {
                    let e = b - a;
                    e.cross(p - a) / e.norm()
                })
                .fold(f64::INFINITY, f64::min)
        } else {
            self.edges().map(|(a, b)| segment_distance(p, a, b)).fold(f64::INFINITY, f64::min)
        }
    }

    /// `true` if every vertex of `other` lies in this body.
    pub fn contains_polygon(&self, other: &ConvexPolygon) -> bool {
        other.vertices.iter().all(|&p| self.contains(p))
    }

    /// Parameter interval `[t0, t1] ⊂ [0, 1]` of the segment `p + t (q - p)` lying in the body.
    pub fn clip_segment(&self, p: Point, q: Point) -> Option<(f64, f64)> {
        let d = q - p;
        let (mut t0, mut t1) = (0.0f64, 1.0f64);
        for (a, b) in self.edges() {
            let e = b - a;
            // Inside means e × (x - a) >= 0; along the segment this is c0 + t c1 >= 0.
            let c0 = e.cross(p - a);
            let c1 = e.cross(d);
            if c1 == 0.0 {
                if c0 < 0.0 {
                    return None;
                }
            } else {
                let t = -c0 / c1;
                if c1 > 0.0 {
                    t0 = t0.max(t);
                } else {
                    t1 = t1.min(t);
                }
            }
            if t0 > t1 {
                return None;
            }
        }
        Some((t0, t1))
    }

    /// Outer parallel body `self + B_r`, with arcs sampled at [`DEFAULT_ARC_RES`].
    pub fn dilate(&self, r: f64) -> ConvexPolygon {
        self.dilate_with(r, DEFAULT_ARC_RES)
    }

    /// Outer parallel body with circular arcs sampled at angular resolution `arc_res`.
    ///
    /// Arcs are replaced by circumscribed polygonal arcs, so the result contains the exact
    /// dilation, lies within Hausdorff distance `r (1 - cos(arc_res / 2))` of it, and
    /// eroding it by `r` recovers `self`.
    pub fn dilate_with(&self, r: f64, arc_res: f64) -> ConvexPolygon {
        if !(r > 0.0) {
            return self.clone();
        }
        let n = self.vertices.len();
        let mut pts = Vec::new();
        for i in 0..n {
            let v = self.vertices[i];
            let n_prev = -self.edge_inner_normal((i + n - 1) % n);
            let n_next = -self.edge_inner_normal(i);
            let a0 = math::atan2(n_prev.y, n_prev.x);
            let mut sweep = math::wrap_angle(math::atan2(n_next.y, n_next.x) - a0);
            if sweep > PI {
                // collinear vertex: the normals agree up to rounding
                sweep = 0.0;
            }
            // Tangent polygon of the arc, so the offset stays outside the exact dilation.
            // The slightly finer step keeps the overshoot r (sec(Δ/2) - 1) within the
            // bound r (1 - cos(arc_res/2)).
            let steps = (math::ceil(sweep / (0.98 * arc_res) - 1e-9) as usize).max(1);
            let dt = sweep / steps as f64;
            let reach = r / math::cos(0.5 * dt);
            pts.push(v + Point::new(math::cos(a0), math::sin(a0)) * r);
            for k in 0..steps {
                let t = a0 + dt * (k as f64 + 0.5);
                pts.push(v + Point::new(math::cos(t), math::sin(t)) * reach);
            }
            let t = a0 + sweep;
            pts.push(v + Point::new(math::cos(t), math::sin(t)) * r);
        }
        ConvexPolygon::hull(&pts).expect("dilation of a valid polygon is nondegenerate")
    }

    /// Inner parallel body `{x : B_r(x) ⊂ self}`.
    pub fn erode(&self, r: f64) -> Result<ConvexPolygon> {
        if !(r > 0.0) {
            return Ok(self.clone());
        }
        let mut poly = self.vertices.clone();
        for (a, b) in self.edges() {
            let e = b - a;
            let len = e.norm();
            let inside = |p: Point| e.cross(p - a) / len - r;
            poly = clip_half_plane(&poly, inside);
            if poly.len() < 3 {
                return Err(Error::EmptyErosion { radius: r });
            }
        }
        match ConvexPolygon::hull(&poly) {
            Ok(p) if p.area() > EPS_GEOM => Ok(p),
            _ => Err(Error::EmptyErosion { radius: r }),
        }
    }

    /// Exposed face minimizing `x·n`; `n` is its inner normal.
    pub fn facet_of(&self, n: Direction) -> Facet {
        let u = n.vector();
        let t = Point::new(u.y, -u.x);
        let m = self.vertices.iter().map(|p| p.dot(u)).fold(f64::INFINITY, f64::min);
        let tol = EPS_GEOM * self.scale();
        let mut start: Option<Point> = None;
        let mut end: Option<Point> = None;
        for &p in self.vertices.iter().filter(|p| p.dot(u) <= m + tol) {
            if start.map_or(true, |s| p.dot(t) < s.dot(t)) {
                start = Some(p);
            }
            if end.map_or(true, |s| p.dot(t) > s.dot(t)) {
                end = Some(p);
            }
        }
        Facet { start: start.unwrap_or(self.vertices[0]), end: end.unwrap_or(self.vertices[0]), normal: n }
    }

    /// Extreme points: the vertices with a strict turn.
    pub fn extreme_points(&self) -> Vec<Point> {
        let n = self.vertices.len();
        (0..n)
            .filter(|&i| {
                let e0 = self.vertices[i] - self.vertex(i + n - 1);
                let e1 = self.vertex(i + 1) - self.vertices[i];
                e0.cross(e1) > EPS_GEOM * e0.norm() * e1.norm()
            })
            .map(|i| self.vertices[i])
            .collect()
    }

    /// Largest gap by which vertex `i` can be the unique minimizer of a linear functional.
    ///
    /// For a direction `n` in the normal cone of the vertex the second smallest value of
    /// `x·n` is attained at a neighbour, so the margin is `max_n min(n·a, n·b)` with `a`,
    /// `b` the vectors to the neighbours.
    pub fn exposure_margin(&self, i: usize) -> f64 {
        let n = self.vertices.len();
        let v = self.vertex(i);
        let a = self.vertex(i + n - 1) - v;
        let b = self.vertex(i + 1) - v;
        let mut best: f64 = 0.0;
        let mut consider = |u: Point| {
            let m = u.dot(a).min(u.dot(b));
            if m > best {
                best = m;
            }
        };
        consider(a / a.norm());
        consider(b / b.norm());
        let d = a - b;
        if d.norm() > 0.0 {
            let u = d.perp() / d.norm();
            consider(u);
            consider(-u);
        }
        best
    }

    /// Vertices that are unique minimizers of some linear functional with margin above `tol`.
    pub fn exposed_points(&self, tol: f64) -> Vec<Point> {
        (0..self.vertices.len()).filter(|&i| self.exposure_margin(i) > tol).map(|i| self.vertices[i]).collect()
    }

    /// [`exposed_points`](Self::exposed_points) with tolerance `1e-7 * diameter`.
    pub fn exposed_points_default(&self) -> Vec<Point> {
        self.exposed_points(EXPOSED_REL_TOL * self.diameter())
    }

    /// Boundary resampled at `n` points equally spaced in arc length, starting at vertex 0.
    pub fn resample(&self, n: usize) -> Vec<Point> {
        let per = self.perimeter();
        let step = per / n as f64;
        let mut out = Vec::with_capacity(n);
        let mut edges = self.edges();
        let (mut a, mut b) = edges.next().expect("polygon has edges");
        let mut acc = 0.0;
        let mut len = a.dist(b);
        for k in 0..n {
            let s = step * k as f64;
            while s > acc + len {
                acc += len;
                match edges.next() {
                    Some((p, q)) => {
                        a = p;
                        b = q;
                        len = a.dist(b);
                    }
                    None => break,
                }
            }
            let t = if len > 0.0 { ((s - acc) / len).clamp(0.0, 1.0) } else { 0.0 };
            out.push(a + (b - a) * t);
        }
        out
    }

    pub fn translated(&self, d: Point) -> ConvexPolygon {
        Self::canonical(self.vertices.iter().map(|&p| p + d).collect())
    }

    /// Dilation about the origin by a positive factor.
    pub fn scaled(&self, s: f64) -> ConvexPolygon {
        Self::canonical(self.vertices.iter().map(|&p| p * s).collect())
    }

    /// Minkowski sum `self ⊕ other`, the hull of all pairwise vertex sums.
    pub fn minkowski_sum(&self, other: &ConvexPolygon) -> ConvexPolygon {
        let sums: Vec<Point> = self.vertices.iter().flat_map(|&a| other.vertices.iter().map(move |&b| a + b)).collect();
        Self::hull(&sums).expect("sum of two convex bodies has interior")
    }

    /// Smallest enclosing circle `(center, radius)` of the vertices.
    pub fn enclosing_circle(&self) -> (Point, f64) {
        enclosing_circle(&self.vertices)
    }

    /// Boundary gap of `inner` inside `self`: `min_{x ∈ inner} dist(x, ∂self)`.
    ///
    /// Returns a nonpositive value when `inner` is not contained in `self`.
    pub fn gap_to(&self, inner: &ConvexPolygon) -> f64 {
        // dist(·, ∂V) is concave on convex V, so its minimum over `inner` is at a vertex.
        inner.vertices.iter().map(|&p| -self.signed_distance(p)).fold(f64::INFINITY, f64::min)
    }

    /// Locates `p` on the boundary: `(edge index, parameter)` if within `tol`.
    pub fn locate_on_boundary(&self, p: Point, tol: f64) -> Option<(usize, f64)> {
        let mut best: Option<(usize, f64, f64)> = None;
        for (i, (a, b)) in self.edges().enumerate() {
            let e = b - a;
            let t = ((p - a).dot(e) / e.dot(e)).clamp(0.0, 1.0);
            let d = p.dist(a + e * t);
            if best.map_or(true, |(_, _, bd)| d < bd) {
                best = Some((i, t, d));
            }
        }
        best.filter(|&(_, _, d)| d <= tol).map(|(i, t, _)| (i, t))
    }

    /// Inner normal at a boundary point; vertices get the bisecting normal.
    pub fn inner_normal_at(&self, p: Point, tol: f64) -> Option<Point> {
        let (i, t) = self.locate_on_boundary(p, tol)?;
        let len = self.vertex(i).dist(self.vertex(i + 1));
        let eps = (tol / len).max(1e-12);
        Some(if t <= eps {
            self.vertex_inner_normal(i)
        } else if t >= 1.0 - eps {
            self.vertex_inner_normal(i + 1)
        } else {
            self.edge_inner_normal(i)
        })
    }

    fn scale(&self) -> f64 {
        self.vertices.iter().map(|p| math::abs(p.x).max(math::abs(p.y))).fold(1.0, f64::max)
    }
}

/// Symmetric Hausdorff distance between convex polygons, computed exactly as
/// `max_u |h_A(u) - h_B(u)|`.
pub fn hausdorff(a: &ConvexPolygon, b: &ConvexPolygon) -> f64 {
    support_excess(a, b).max(support_excess(b, a))
}

/// `max_u (h_A(u) - h_B(u))` over unit directions `u`, computed exactly.
///
/// Nonpositive exactly when `A ⊆ B`; otherwise the smallest `r` with `A ⊆ B + B_r`.
/// Between consecutive edge normals of either polygon both support points are fixed, so
/// the difference is `w·u` for a fixed vector `w` and its maximum on the arc is at an
/// endpoint or at `w/|w|`.
pub fn support_excess(a: &ConvexPolygon, b: &ConvexPolygon) -> f64 {
    let mut angles: Vec<f64> = Vec::with_capacity(a.len() + b.len());
    for poly in [a, b] {
        for i in 0..poly.len() {
            let n = -poly.edge_inner_normal(i);
            angles.push(math::wrap_angle(math::atan2(n.y, n.x)));
        }
    }
    angles.sort_by(f64::total_cmp);
    angles.dedup_by(|x, y| math::abs(*x - *y) <= 1e-15);
    let m = angles.len();
    let mut best = f64::NEG_INFINITY;
    for k in 0..m {
        let lo = angles[k];
        let hi = if k + 1 < m { angles[k + 1] } else { angles[0] + TAU };
        let mid = Direction::new(0.5 * (lo + hi));
        let w = a.support_point(mid) - b.support_point(mid);
        let f = |t: f64| w.dot(Direction::new(t).vector());
        best = best.max(f(lo)).max(f(hi));
        let off = math::wrap_angle(math::atan2(w.y, w.x) - lo);
        if off <= hi - lo {
            best = best.max(w.norm());
        }
    }
    best
}

fn signed_area(vs: &[Point]) -> f64 {
    let n = vs.len();
    0.5 * (0..n).map(|i| vs[i].cross(vs[(i + 1) % n])).sum::<f64>()
}

/// Distance from `p` to the segment `[a, b]`.
pub fn segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let e = b - a;
    let l2 = e.dot(e);
    if l2 == 0.0 {
        return p.dist(a);
    }
    let t = ((p - a).dot(e) / l2).clamp(0.0, 1.0);
    p.dist(a + e * t)
}

/// Sutherland–Hodgman step keeping `{x : f(x) >= 0}` for an affine `f`.
fn clip_half_plane(poly: &[Point], f: impl Fn(Point) -> f64) -> Vec<Point> {
    let n = poly.len();
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n {
        let (p, q) = (poly[i], poly[(i + 1) % n]);
        let (fp, fq) = (f(p), f(q));
        if fp >= 0.0 {
            out.push(p);
        }
        if (fp >= 0.0) != (fq >= 0.0) {
            out.push(p + (q - p) * (fp / (fp - fq)));
        }
    }
    out
}

fn circle_two(a: Point, b: Point) -> (Point, f64) {
    let c = (a + b) * 0.5;
    (c, c.dist(a))
}

fn circle_three(a: Point, b: Point, c: Point) -> Option<(Point, f64)> {
    let (ab, ac) = (b - a, c - a);
    let d = 2.0 * ab.cross(ac);
    if math::abs(d) <= f64::EPSILON * ab.norm() * ac.norm() {
        return None;
    }
    let (l1, l2) = (ab.dot(ab), ac.dot(ac));
    let center = a + Point::new(ac.y * l1 - ab.y * l2, ab.x * l2 - ac.x * l1) / d;
    Some((center, center.dist(a)))
}

/// Smallest enclosing circle by the iterative Welzl scheme (deterministic order).
fn enclosing_circle(pts: &[Point]) -> (Point, f64) {
    let inside = |c: (Point, f64), p: Point| p.dist(c.0) <= c.1 * (1.0 + 1e-12) + 1e-15;
    let mut c = (pts[0], 0.0);
    for i in 1..pts.len() {
        if inside(c, pts[i]) {
            continue;
        }
        c = (pts[i], 0.0);
        for j in 0..i {
            if inside(c, pts[j]) {
                continue;
            }
            c = circle_two(pts[i], pts[j]);
            for k in 0..j {
                if inside(c, pts[k]) {
                    continue;
                }
                c = circle_three(pts[i], pts[j], pts[k]).unwrap_or_else(|| circle_two(pts[i], pts[k]));
            }
        }
    }
    c
}
