//! Annular Dirichlet problem between two convex polygons and boundary gradient probes.
//!
//! The Laplacian is discretized on a uniform Cartesian grid with the five-point stencil;
//! nodes next to a boundary use Shortley–Weller unequal arms, with the crossing located
//! exactly on the polygon. After the solve, a band of ghost values is extrapolated across
//! both boundaries so that bilinear interpolation is second order up to the boundary.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geom::{ConvexPolygon, Direction, Point, EPS_GEOM};
use crate::linalg::{self, StencilMatrix, E, N, NONE, S, W};
use crate::math;

/// Minimum gap between the inner and outer boundaries, in grid cells.
pub const MIN_GAP_CELLS: f64 = 4.0;

/// Default Jacobi-normalized residual target of the linear solve.
pub const DEFAULT_RESIDUAL_TOL: f64 = 1e-10;

/// Arms shorter than this fraction of `h` snap the node onto the boundary.
const SNAP_FRACTION: f64 = 1e-6;

/// Default probe distance (in cells) defining the coarsest level of the θ/h_θ probe.
const PROBE_CELLS: f64 = 3.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeKind {
    /// Solved for.
    Unknown,
    /// Within a snap distance of a boundary; carries the boundary data.
    Boundary,
    /// Ghost value extrapolated from the solution.
    Ghost,
    /// Inside the inner body, not needed for interpolation.
    Inner,
    /// Outside the outer body, not needed for interpolation.
    Exterior,
}

/// Uniform grid with nodes at `((i0 + i) h, (j0 + j) h)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub i0: i64,
    pub j0: i64,
    pub nx: usize,
    pub ny: usize,
    pub h: f64,
}

impl Grid {
    fn covering(outer: &ConvexPolygon, h: f64) -> Self {
        let (lo, hi) = outer.bounding_box();
        let i0 = math::floor(lo.x / h) as i64 - 3;
        let j0 = math::floor(lo.y / h) as i64 - 3;
        let i1 = math::ceil(hi.x / h) as i64 + 3;
        let j1 = math::ceil(hi.y / h) as i64 + 3;
        Self { i0, j0, nx: (i1 - i0 + 1) as usize, ny: (j1 - j0 + 1) as usize, h }
    }

    #[inline]
    pub fn x(&self, i: usize) -> f64 {
        (self.i0 + i as i64) as f64 * self.h
    }

    #[inline]
    pub fn y(&self, j: usize) -> f64 {
        (self.j0 + j as i64) as f64 * self.h
    }

    #[inline]
    pub fn node(&self, i: usize, j: usize) -> Point {
        Point::new(self.x(i), self.y(j))
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }
}

/// Intersection of a grid line with the interior of a convex polygon, as coordinates
/// along the line; `None` when the line misses the body.
fn line_interval(poly: &ConvexPolygon, p: Point, q: Point, horizontal: bool) -> Option<(f64, f64)> {
    let (t0, t1) = poly.clip_segment(p, q)?;
    let a = p + (q - p) * t0;
    let b = p + (q - p) * t1;
    Some(if horizontal { (a.x, b.x) } else { (a.y, b.y) })
}

/// Boundary data on one side of the annulus.
pub type DataFn<'a> = &'a dyn Fn(Point) -> f64;

/// Builder for the Dirichlet problem `Δv = 0` between `inner` and `outer`.
///
/// Defaults: `v = 1` on the inner boundary, `v = 0` on the outer boundary, residual target
/// [`DEFAULT_RESIDUAL_TOL`].
pub struct DirichletProblem<'a> {
    inner: &'a ConvexPolygon,
    outer: &'a ConvexPolygon,
    h: f64,
    inner_data: Option<DataFn<'a>>,
    outer_data: Option<DataFn<'a>>,
    tol: f64,
    warm_start: Option<&'a HarmonicField>,
}

impl<'a> DirichletProblem<'a> {
    pub fn new(inner: &'a ConvexPolygon, outer: &'a ConvexPolygon, h: f64) -> Self {
        Self { inner, outer, h, inner_data: None, outer_data: None, tol: DEFAULT_RESIDUAL_TOL, warm_start: None }
    }

    pub fn inner_data(mut self, f: DataFn<'a>) -> Self {
        self.inner_data = Some(f);
        self
    }

    pub fn outer_data(mut self, f: DataFn<'a>) -> Self {
        self.outer_data = Some(f);
        self
    }

    pub fn tolerance(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn warm_start(mut self, field: &'a HarmonicField) -> Self {
        self.warm_start = Some(field);
        self
    }

    pub fn solve(self) -> Result<HarmonicField> {
        let h = self.h;
        if !(h > 0.0) || !h.is_finite() {
            return Err(Error::InvalidParams("grid spacing must be positive"));
        }
        let required = MIN_GAP_CELLS * h;
        let gap = self.outer.gap_to(self.inner);
        if gap < required {
            return Err(Error::GeometryTooTight { gap, required });
        }
        let in_data = |p: Point| self.inner_data.map_or(1.0, |f| f(p));
        let out_data = |p: Point| self.outer_data.map_or(0.0, |f| f(p));

        let grid = Grid::covering(self.outer, h);
        let Grid { nx, ny, .. } = grid;
        let far = 4.0 * h * (nx + ny) as f64;
        // Row and column intervals of both bodies.
        let rows_out: Vec<_> = (0..ny)
            .map(|j| {
                let y = grid.y(j);
                line_interval(self.outer, Point::new(-far, y), Point::new(far, y), true)
            })
            .collect();
        let rows_in: Vec<_> = (0..ny)
            .map(|j| {
                let y = grid.y(j);
                line_interval(self.inner, Point::new(-far, y), Point::new(far, y), true)
            })
            .collect();
        let cols_out: Vec<_> = (0..nx)
            .map(|i| {
                let x = grid.x(i);
                line_interval(self.outer, Point::new(x, -far), Point::new(x, far), false)
            })
            .collect();
        let cols_in: Vec<_> = (0..nx)
            .map(|i| {
                let x = grid.x(i);
                line_interval(self.inner, Point::new(x, -far), Point::new(x, far), false)
            })
            .collect();

        let snap = SNAP_FRACTION * h;
        let inside = |c: f64, iv: Option<(f64, f64)>| iv.is_some_and(|(a, b)| c > a && c < b);
        let near = |c: f64, iv: Option<(f64, f64)>| {
            iv.is_some_and(|(a, b)| math::abs(c - a) <= snap || math::abs(c - b) <= snap)
        };

        let mut kind = vec![NodeKind::Exterior; nx * ny];
        let mut values = vec![0.0; nx * ny];
        for j in 0..ny {
            for i in 0..nx {
                let (x, y) = (grid.x(i), grid.y(j));
                let k = grid.idx(i, j);
                let in_outer = inside(x, rows_out[j]) && inside(y, cols_out[i]);
                let in_inner = inside(x, rows_in[j]) && inside(y, cols_in[i]);
                let p = Point::new(x, y);
                if near(x, rows_out[j]) || near(y, cols_out[i]) {
                    kind[k] = NodeKind::Boundary;
                    values[k] = out_data(p);
                } else if near(x, rows_in[j]) || near(y, cols_in[i]) {
                    kind[k] = NodeKind::Boundary;
                    values[k] = in_data(p);
                } else if in_inner {
                    kind[k] = NodeKind::Inner;
                    values[k] = 1.0;
                } else if in_outer {
                    kind[k] = NodeKind::Unknown;
                }
            }
        }

        // Number the unknowns row by row.
        let mut unknown_of = vec![NONE; nx * ny];
        let mut nodes: Vec<(usize, usize)> = Vec::new();
        for j in 0..ny {
            for i in 0..nx {
                if kind[grid.idx(i, j)] == NodeKind::Unknown {
                    unknown_of[grid.idx(i, j)] = nodes.len();
                    nodes.push((i, j));
                }
            }
        }

        // Arm toward a neighbour: `(arm length, neighbour unknown or NONE, boundary value)`.
        let arm = |i: usize, j: usize, di: i64, dj: i64| -> (f64, usize, f64) {
            let ni = (i as i64 + di) as usize;
            let nj = (j as i64 + dj) as usize;
            let nk = grid.idx(ni, nj);
            match kind[nk] {
                NodeKind::Unknown => (h, unknown_of[nk], 0.0),
                NodeKind::Boundary => (h, NONE, values[nk]),
                _ => {
                    let horizontal = dj == 0;
                    let (c, ivo, ivi) = if horizontal {
                        (grid.x(i), rows_out[j], rows_in[j])
                    } else {
                        (grid.y(j), cols_out[i], cols_in[i])
                    };
                    let dir = if horizontal { di as f64 } else { dj as f64 };
                    let hits_inner = kind[nk] == NodeKind::Inner;
                    let (a, b) = if hits_inner { ivi.unwrap() } else { ivo.unwrap() };
                    // Leaving the outer body through its far end, or entering the inner
                    // body through its near end.
                    let cross = match (hits_inner, dir > 0.0) {
                        (false, true) => b,
                        (false, false) => a,
                        (true, true) => a,
                        (true, false) => b,
                    };
                    let len = math::abs(cross - c).clamp(snap, h);
                    let p = if horizontal { Point::new(cross, grid.y(j)) } else { Point::new(grid.x(i), cross) };
                    let value = if hits_inner { in_data(p) } else { out_data(p) };
                    (len, NONE, value)
                }
            }
        };

        let n = nodes.len();
        let mut nbr = vec![[(NONE, 0.0); 4]; n];
        let mut rhs = vec![0.0; n];
        let mut arms = vec![[0.0f64; 4]; n];
        for (row, &(i, j)) in nodes.iter().enumerate() {
            let aw = arm(i, j, -1, 0);
            let ae = arm(i, j, 1, 0);
            let as_ = arm(i, j, 0, -1);
            let an = arm(i, j, 0, 1);
            arms[row] = [aw.0, as_.0, ae.0, an.0];
            // Shortley–Weller: 2/(hW+hE) [(uE-u)/hE + (uW-u)/hW] + same in y.
            let cw = 2.0 / (aw.0 * (aw.0 + ae.0));
            let ce = 2.0 / (ae.0 * (aw.0 + ae.0));
            let cs = 2.0 / (as_.0 * (as_.0 + an.0));
            let cn = 2.0 / (an.0 * (as_.0 + an.0));
            let diag = cw + ce + cs + cn;
            let mut b = 0.0;
            for (slot, (c, (_, col, val))) in [(W, (cw, aw)), (S, (cs, as_)), (E, (ce, ae)), (N, (cn, an))] {
                if col == NONE {
                    b += c * val;
                } else {
                    nbr[row][slot] = (col, -c / diag);
                }
            }
            rhs[row] = b / diag;
        }
        let matrix = StencilMatrix { nbr };

        let mut x: Vec<f64> = match self.warm_start {
            Some(prev) => nodes.iter().map(|&(i, j)| prev.interpolate(grid.node(i, j)).clamp(0.0, 1.0)).collect(),
            None => vec![0.5; n],
        };
        let max_iter = 20_000 + 10 * n;
        let stats = linalg::bicgstab(&matrix, &rhs, &mut x, self.tol, max_iter);
        if !stats.converged {
            return Err(Error::SolveDiverged { iterations: stats.iterations, residual: stats.residual });
        }
        for (row, &(i, j)) in nodes.iter().enumerate() {
            values[grid.idx(i, j)] = x[row];
        }

        let mut field = HarmonicField {
            inner: self.inner.clone(),
            outer: self.outer.clone(),
            grid,
            kind,
            values,
            residual_linf: stats.residual,
            iterations: stats.iterations,
            unknowns: n,
            reach: 4.0 * self.outer.diameter() + 1.0,
        };
        field.extrapolate_ghosts(&rows_out, &rows_in, &cols_out, &cols_in, &in_data, &out_data);
        Ok(field)
    }
}

/// Solves `Δv = 0` between `inner` and `outer` with `v = 1` on the inner and `v = 0` on
/// the outer boundary.
pub fn solve_dirichlet(inner: &ConvexPolygon, outer: &ConvexPolygon, h: f64) -> Result<HarmonicField> {
    DirichletProblem::new(inner, outer, h).solve()
}

/// Discrete harmonic function on the annulus between two convex polygons.
#[derive(Clone, Debug)]
pub struct HarmonicField {
    inner: ConvexPolygon,
    outer: ConvexPolygon,
    grid: Grid,
    kind: Vec<NodeKind>,
    values: Vec<f64>,
    residual_linf: f64,
    iterations: usize,
    unknowns: usize,
    /// Length that carries any probe ray across the outer body.
    reach: f64,
}

/// One boundary gradient sample.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundarySample {
    pub point: Point,
    /// Inner normal of the outer boundary at `point`.
    pub normal: Direction,
    pub grad_mag: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct BoundaryTrace {
    pub samples: Vec<BoundarySample>,
}

impl BoundaryTrace {
    pub fn grads(&self) -> impl Iterator<Item = f64> + '_ {
        self.samples.iter().map(|s| s.grad_mag)
    }
}

impl HarmonicField {
    pub fn inner(&self) -> &ConvexPolygon {
        &self.inner
    }

    pub fn outer(&self) -> &ConvexPolygon {
        &self.outer
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn h(&self) -> f64 {
        self.grid.h
    }

    /// Jacobi-normalized residual `max_i |b_i - (A v)_i| / A_ii` of the linear solve.
    pub fn residual_linf(&self) -> f64 {
        self.residual_linf
    }

    pub fn solver_iterations(&self) -> usize {
        self.iterations
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn node_kind(&self, i: usize, j: usize) -> NodeKind {
        self.kind[self.grid.idx(i, j)]
    }

    pub fn node_value(&self, i: usize, j: usize) -> f64 {
        self.values[self.grid.idx(i, j)]
    }

    /// Solved and boundary nodes as `(point, value)`, row by row.
    pub fn domain_nodes(&self) -> impl Iterator<Item = (Point, f64)> + '_ {
        let g = self.grid;
        (0..g.ny).flat_map(move |j| {
            (0..g.nx).filter_map(move |i| {
                let k = g.idx(i, j);
                matches!(self.kind[k], NodeKind::Unknown | NodeKind::Boundary).then(|| (g.node(i, j), self.values[k]))
            })
        })
    }

    /// Maximum over solved nodes of `|h² Δ_h v|` with the plain five-point stencil, using
    /// only nodes whose four neighbours are also solved.
    pub fn interior_laplacian_linf(&self) -> f64 {
        let g = self.grid;
        let mut worst: f64 = 0.0;
        for j in 1..g.ny - 1 {
            for i in 1..g.nx - 1 {
                let ks = [g.idx(i, j), g.idx(i - 1, j), g.idx(i + 1, j), g.idx(i, j - 1), g.idx(i, j + 1)];
                if ks.iter().all(|&k| self.kind[k] == NodeKind::Unknown) {
                    let v = &self.values;
                    let lap = v[ks[1]] + v[ks[2]] + v[ks[3]] + v[ks[4]] - 4.0 * v[ks[0]];
                    worst = worst.max(math::abs(lap));
                }
            }
        }
        worst
    }

    /// Field value, extended by `0` outside the outer body and `1` inside the inner body.
    pub fn value_at(&self, p: Point) -> f64 {
        if !self.outer.contains(p) {
            return 0.0;
        }
        if self.inner.contains(p) && self.inner.signed_distance(p) < -EPS_GEOM {
            return 1.0;
        }
        self.interpolate(p)
    }

    /// Bilinear interpolation of the ghost-extended grid values.
    fn interpolate(&self, p: Point) -> f64 {
        let g = self.grid;
        let fx = p.x / g.h - g.i0 as f64;
        let fy = p.y / g.h - g.j0 as f64;
        let i = (math::floor(fx).max(0.0) as usize).min(g.nx - 2);
        let j = (math::floor(fy).max(0.0) as usize).min(g.ny - 2);
        let (tx, ty) = (fx - i as f64, fy - j as f64);
        let v = |a: usize, b: usize| self.values[g.idx(a, b)];
        (1.0 - ty) * ((1.0 - tx) * v(i, j) + tx * v(i + 1, j)) + ty * ((1.0 - tx) * v(i, j + 1) + tx * v(i + 1, j + 1))
    }

    /// Distance from `xi` along `n` to the inner body, or to the far side of the outer one.
    fn probe_range(&self, xi: Point, n: Point) -> f64 {
        let far = xi + n * (self.reach);
        let to_inner = self.inner.clip_segment(xi, far).map(|(t0, _)| t0);
        let to_exit = self.outer.clip_segment(xi + n * (0.5 * self.grid.h), far).map(|(_, t1)| t1);
        let len = far.dist(xi);
        match (to_inner, to_exit) {
            (Some(a), _) => a * len,
            (None, Some(b)) => b * len,
            (None, None) => 0.0,
        }
    }

    /// Field increment `v(ξ + s n) - v(ξ)` read from the ghost-extended interpolant.
    fn rise(&self, xi: Point, u: Point, s: f64) -> f64 {
        self.interpolate(xi + u * s) - self.interpolate(xi)
    }

    /// `h_θ = inf { s > 0 : v(ξ + s n) > θ }`, by marching then bisection.
    ///
    /// Values are measured relative to the interpolated value at `ξ`, which vanishes up
    /// to the interpolation error.
    pub fn h_theta(&self, xi: Point, n: Direction, theta: f64) -> Result<f64> {
        let u = n.vector();
        let range = self.probe_range(xi, u);
        let step = 0.25 * self.grid.h;
        let mut lo = 0.0;
        let mut hi = None;
        let mut s: f64 = 0.0;
        while s < range {
            s = (s + step).min(range);
            if self.rise(xi, u, s) > theta {
                hi = Some(s);
                break;
            }
            lo = s;
        }
        let mut hi = hi.ok_or(Error::NormalProbeFailed { x: xi.x, y: xi.y })?;
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if self.rise(xi, u, mid) > theta {
                hi = mid;
            } else {
                lo = mid;
            }
            if hi - lo <= 1e-15 * (1.0 + hi) {
                break;
            }
        }
        Ok(hi)
    }

    /// Normal derivative at a boundary point as the Richardson extrapolation of `θ/h_θ`
    /// over `θ ∈ {θ₀, θ₀/2, θ₀/4}`, with `θ₀` the rise three cells inside.
    pub fn normal_gradient(&self, xi: Point, n: Direction) -> Result<f64> {
        let u = n.vector();
        let range = self.probe_range(xi, u);
        let d0 = (PROBE_CELLS * self.grid.h).min(0.5 * range);
        let theta0 = self.rise(xi, u, d0);
        if !(theta0 > 0.0) {
            return Err(Error::NormalProbeFailed { x: xi.x, y: xi.y });
        }
        let f = |t: f64| -> Result<f64> { Ok(t / self.h_theta(xi, n, t)?) };
        let (f1, f2, f4) = (f(theta0)?, f(0.5 * theta0)?, f(0.25 * theta0)?);
        Ok((8.0 * f4 - 6.0 * f2 + f1) / 3.0)
    }

    /// Second-order one-sided difference `(4 v(h) - v(2h) - 3 v(0)) / 2h` along the normal.
    /// Cross-check for [`normal_gradient`](Self::normal_gradient).
    pub fn one_sided_gradient(&self, xi: Point, n: Direction) -> f64 {
        let u = n.vector();
        let h = self.grid.h;
        (4.0 * self.rise(xi, u, h) - self.rise(xi, u, 2.0 * h)) / (2.0 * h)
    }

    /// Richardson-extrapolated difference quotient `(v(ξ + r n) - v(ξ)) / r` over
    /// `r ∈ {r₀, r₀/2, r₀/4}`.
    pub fn dyadic_slope(&self, xi: Point, n: Direction, r0: f64) -> Result<f64> {
        let u = n.vector();
        let range = self.probe_range(xi, u);
        if !(r0 > 0.0) || r0 > range {
            return Err(Error::NormalProbeFailed { x: xi.x, y: xi.y });
        }
        let f = |r: f64| self.rise(xi, u, r) / r;
        Ok((8.0 * f(0.25 * r0) - 6.0 * f(0.5 * r0) + f(r0)) / 3.0)
    }

    /// Boundary gradient trace at points of the outer boundary, normals taken from the
    /// polygon (vertices get the bisecting normal).
    pub fn boundary_gradient(&self, points: &[Point]) -> Result<BoundaryTrace> {
        let tol = 1e3 * EPS_GEOM * self.reach;
        let mut samples = Vec::with_capacity(points.len());
        for &p in points {
            let normal = self
                .outer
                .inner_normal_at(p, tol)
                .and_then(Direction::from_vector)
                .ok_or(Error::NormalProbeFailed { x: p.x, y: p.y })?;
            samples.push(BoundarySample { point: p, normal, grad_mag: self.normal_gradient(p, normal)? });
        }
        Ok(BoundaryTrace { samples })
    }

    /// Boundary gradient at explicitly given `(point, inner normal)` pairs.
    pub fn gradient_along(&self, probes: &[(Point, Direction)]) -> Result<BoundaryTrace> {
        let samples = probes
            .iter()
            .map(|&(point, normal)| {
                Ok(BoundarySample { point, normal, grad_mag: self.normal_gradient(point, normal)? })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BoundaryTrace { samples })
    }

    /// Level line `{v = t}` traced along `rays` rays from `center`, which must lie inside
    /// the inner body. Superlevel sets are star-shaped about such a point.
    pub fn level_line(&self, t: f64, center: Point, rays: usize) -> Vec<Point> {
        let far = self.reach;
        (0..rays)
            .filter_map(|k| {
                let dir = Direction::new(math::TAU * k as f64 / rays as f64).vector();
                let end = center + dir * far;
                let (_, t_in) = self.inner.clip_segment(center, end)?;
                let (_, t_out) = self.outer.clip_segment(center, end)?;
                let (mut lo, mut hi) = (t_in * far, t_out * far);
                if self.value_at(center + dir * lo) < t || self.value_at(center + dir * hi) > t {
                    return None;
                }
                for _ in 0..60 {
                    let mid = 0.5 * (lo + hi);
                    if self.value_at(center + dir * mid) >= t {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                Some(center + dir * (0.5 * (lo + hi)))
            })
            .collect()
    }

    /// Quadratic extrapolation of the solution into two layers of ghost nodes on both
    /// sides of each boundary.
    fn extrapolate_ghosts(
        &mut self,
        rows_out: &[Option<(f64, f64)>],
        rows_in: &[Option<(f64, f64)>],
        cols_out: &[Option<(f64, f64)>],
        cols_in: &[Option<(f64, f64)>],
        in_data: &dyn Fn(Point) -> f64,
        out_data: &dyn Fn(Point) -> f64,
    ) {
        let g = self.grid;
        let h = g.h;
        let valid = |k: NodeKind| matches!(k, NodeKind::Unknown | NodeKind::Boundary);
        let dirs: [(i64, i64); 4] = [(-1, 0), (1, 0), (0, -1), (0, 1)];
        let at = |i: usize, j: usize, di: i64, dj: i64, s: i64| -> Option<(usize, usize)> {
            let a = i as i64 + di * s;
            let b = j as i64 + dj * s;
            (a >= 0 && b >= 0 && (a as usize) < g.nx && (b as usize) < g.ny).then_some((a as usize, b as usize))
        };

        // First layer: ghosts adjacent to solved nodes.
        let mut first: Vec<(usize, f64)> = Vec::new();
        for j in 0..g.ny {
            for i in 0..g.nx {
                let k = g.idx(i, j);
                if valid(self.kind[k]) {
                    continue;
                }
                let to_inner = self.kind[k] == NodeKind::Inner;
                let (mut sum, mut cnt) = (0.0, 0usize);
                for &(di, dj) in &dirs {
                    let Some((i1, j1)) = at(i, j, di, dj, 1) else {
                        continue;
                    };
                    if self.kind[g.idx(i1, j1)] != NodeKind::Unknown {
                        continue;
                    }
                    // Line coordinate s: u1 at 0, ghost at +h, boundary in between.
                    let horizontal = dj == 0;
                    let (c1, iv) = if horizontal {
                        (g.x(i1), if to_inner { rows_in[j] } else { rows_out[j] })
                    } else {
                        (g.y(j1), if to_inner { cols_in[i] } else { cols_out[i] })
                    };
                    let Some((a, b)) = iv else { continue };
                    let sign = -(di + dj) as f64; // unit step from u1 toward the ghost
                    let cross = if to_inner {
                        if sign > 0.0 {
                            a
                        } else {
                            b
                        }
                    } else if sign > 0.0 {
                        b
                    } else {
                        a
                    };
                    let theta = (sign * (cross - c1) / h).clamp(0.0, 1.0);
                    let bp = if horizontal { Point::new(cross, g.y(j)) } else { Point::new(g.x(i), cross) };
                    let bval = if to_inner { in_data(bp) } else { out_data(bp) };
                    let u1 = self.values[g.idx(i1, j1)];
                    let deeper = |s: i64| {
                        at(i, j, -di, -dj, s)
                            .map(|(a, b)| g.idx(a, b))
                            .filter(|&kk| valid(self.kind[kk]))
                            .map(|kk| self.values[kk])
                    };
                    // Nodes farther from the ghost along the line: u2 at -h, u3 at -2h.
                    let (u2, u3) = (deeper(-2), deeper(-3));
                    let est = match (u2, u3) {
                        (Some(u2), _) if theta >= 0.5 => lagrange3([(-1.0, u2), (0.0, u1), (theta, bval)], 1.0),
                        (Some(u2), Some(u3)) => lagrange3([(-2.0, u3), (-1.0, u2), (theta, bval)], 1.0),
                        (Some(u2), None) => lagrange3([(-1.0, u2), (0.0, u1), (theta, bval)], 1.0),
                        (None, _) if theta > 0.0 => u1 + (bval - u1) / theta,
                        (None, _) => bval,
                    };
                    sum += est;
                    cnt += 1;
                }
                if cnt > 0 {
                    first.push((k, sum / cnt as f64));
                }
            }
        }
        for &(k, v) in &first {
            self.kind[k] = NodeKind::Ghost;
            self.values[k] = v;
        }

        // Second layer: linear continuation of the first.
        let mut second: Vec<(usize, f64)> = Vec::new();
        for j in 0..g.ny {
            for i in 0..g.nx {
                let k = g.idx(i, j);
                if !matches!(self.kind[k], NodeKind::Inner | NodeKind::Exterior) {
                    continue;
                }
                let (mut sum, mut cnt) = (0.0, 0usize);
                for &(di, dj) in &dirs {
                    let Some((i1, j1)) = at(i, j, di, dj, 1) else {
                        continue;
                    };
                    if self.kind[g.idx(i1, j1)] != NodeKind::Ghost {
                        continue;
                    }
                    let g1 = self.values[g.idx(i1, j1)];
                    let next = at(i, j, di, dj, 2)
                        .map(|(a, b)| g.idx(a, b))
                        .filter(|&kk| self.kind[kk] != NodeKind::Inner && self.kind[kk] != NodeKind::Exterior)
                        .map(|kk| self.values[kk]);
                    sum += next.map_or(g1, |n2| 2.0 * g1 - n2);
                    cnt += 1;
                }
                if cnt > 0 {
                    second.push((k, sum / cnt as f64));
                }
            }
        }
        for &(k, v) in &second {
            self.kind[k] = NodeKind::Ghost;
            self.values[k] = v;
        }
    }
}

/// Value at `x` of the quadratic through three `(s, value)` points.
fn lagrange3(pts: [(f64, f64); 3], x: f64) -> f64 {
    let mut acc = 0.0;
    for a in 0..3 {
        let mut w = 1.0;
        for b in 0..3 {
            if a != b {
                w *= (x - pts[b].0) / (pts[a].0 - pts[b].0);
            }
        }
        acc += w * pts[a].1;
    }
    acc
}

/// Potential of a unit point charge at `(0, 1)` against the grounded line `x₂ = 0`:
/// `v(x) = -log(x₁² + (x₂-1)²) + log(x₁² + (x₂+1)²)`.
///
/// Returns `(v(x), 4 / (x₁² + 1))`; the second component is `|∇v|` at the foot point
/// `(x₁, 0)` on the boundary.
pub fn point_charge_halfplane_field(x: Point) -> Result<(f64, f64)> {
    let d_minus = x.x * x.x + (x.y - 1.0) * (x.y - 1.0);
    if d_minus == 0.0 {
        return Err(Error::SingularPoint);
    }
    let d_plus = x.x * x.x + (x.y + 1.0) * (x.y + 1.0);
    let value = -math::ln(d_minus) + math::ln(d_plus);
    Ok((value, 4.0 / (x.x * x.x + 1.0)))
}

/// Gradient vector of the point-charge potential.
pub fn point_charge_gradient(x: Point) -> Result<Point> {
    let dm = Point::new(x.x, x.y - 1.0);
    let dp = Point::new(x.x, x.y + 1.0);
    let (m2, p2) = (dm.dot(dm), dp.dot(dp));
    if m2 == 0.0 {
        return Err(Error::SingularPoint);
    }
    Ok(dp * (2.0 / p2) - dm * (2.0 / m2))
}
