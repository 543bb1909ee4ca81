//! Minimal supersolutions of the exterior Bernoulli problem by trial free boundary iteration.
//!
//! The free boundary is kept as the intersection of half-planes `{x·ν_k ≤ h_k}` over a
//! fixed fan of outward normals `ν_k`, so every iterate is convex. Each step solves the
//! Dirichlet problem on the current annulus, measures the relative residual
//! `(|∇u| - Q(n)) / Q(n)` at the face midpoints, smooths it along the boundary and moves
//! each support value `h_k` by a clamped multiple of the result.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use crate::anisotropy::Anisotropy;
use crate::error::{Error, Result};
use crate::geom::{self, ConvexPolygon, Direction, Point, EPS_GEOM};
use crate::harmonic::{self, BoundarySample, BoundaryTrace, DirichletProblem, HarmonicField};
use crate::math::{self, PI, TAU};

/// Linear solve tolerance used while the boundary is still moving.
const ITER_SOLVE_TOL: f64 = 1e-8;

/// Consecutive iterations below `fb_tol` required to stop.
const STOP_STREAK: usize = 3;

/// Faces shorter than this many cells are treated as corners rather than facets.
const MIN_FACET_CELLS: f64 = 0.5;

/// Extra room kept above the minimal Dirichlet gap.
const GAP_SAFETY: f64 = 1.05;

/// Smoothing weight of a face without a usable residual.
const MISSING_WEIGHT: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverParams {
    /// Grid spacing of the Dirichlet solves.
    pub h: f64,
    /// Relative residual tolerance on `|∇u| / Q(n) - 1`.
    pub fb_tol: f64,
    /// Boundary displacement per unit relative residual.
    pub step0: f64,
    pub max_iter: usize,
    /// Width of the band around free boundaries excluded from field comparisons.
    pub r_reg: f64,
    /// Length scale of the residual smoothing along the boundary.
    pub smoothing: f64,
}

impl SolverParams {
    /// Defaults for spacing `h`: `fb_tol = 0.02`, `step0 = 0.5 / q_max`,
    /// `smoothing = step0 / 2`, `max_iter = 500`, `r_reg = 4h`.
    pub fn new(h: f64, q: &Anisotropy) -> Self {
        let step0 = 0.5 / q.q_max();
        Self { h, fb_tol: 0.02, step0, max_iter: 500, r_reg: 4.0 * h, smoothing: 0.5 * step0 }
    }

    /// Defaults with `h = 0.02 diam(K)`.
    pub fn for_core(core: &ConvexPolygon, q: &Anisotropy) -> Self {
        Self::new(0.02 * core.diameter(), q)
    }

    pub fn validate(&self) -> Result<()> {
        let pos = |x: f64| x > 0.0 && x.is_finite();
        if !pos(self.h) {
            return Err(Error::InvalidParams("h must be positive"));
        }
        if !(self.fb_tol > 0.0 && self.fb_tol <= 0.1) {
            return Err(Error::InvalidParams("fb_tol must lie in (0, 0.1]"));
        }
        if !pos(self.step0) {
            return Err(Error::InvalidParams("step0 must be positive"));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidParams("max_iter must be positive"));
        }
        if !pos(self.r_reg) {
            return Err(Error::InvalidParams("r_reg must be positive"));
        }
        if !(self.smoothing >= 0.0 && self.smoothing.is_finite()) {
            return Err(Error::InvalidParams("smoothing must be nonnegative"));
        }
        Ok(())
    }
}

/// Radius `R > ρ` of the radial free boundary around `B_ρ` with constant speed `q`,
/// the root of `R ln(R/ρ) = 1/q`.
pub fn radial_radius(rho: f64, q: f64) -> f64 {
    // The map is increasing on [ρ, ∞) and changes sign on [ρ, ρ + 1/q].
    let f = |r: f64| r * math::ln(r / rho) - 1.0 / q;
    let (mut lo, mut hi) = (rho, rho + 1.0 / q);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Converged (or best) free boundary with its field and boundary residuals.
#[derive(Clone, Debug)]
pub struct FreeBoundarySolution {
    boundary: ConvexPolygon,
    field: HarmonicField,
    q_used: Anisotropy,
    params: SolverParams,
    trace: BoundaryTrace,
    q_values: Vec<f64>,
    interior: Vec<bool>,
    iterations: usize,
    converged: bool,
    history: Vec<f64>,
}

impl FreeBoundarySolution {
    /// Solves the Dirichlet problem between `core` and a given `boundary` and records the
    /// boundary residuals, without moving the boundary.
    pub fn evaluate(
        core: &ConvexPolygon,
        boundary: ConvexPolygon,
        q: &Anisotropy,
        params: &SolverParams,
    ) -> Result<Self> {
        params.validate()?;
        let field = harmonic::solve_dirichlet(core, &boundary, params.h)?;
        Self::assemble(field, q, params, 0, false, Vec::new())
    }

    fn assemble(
        field: HarmonicField,
        q: &Anisotropy,
        params: &SolverParams,
        iterations: usize,
        converged: bool,
        history: Vec<f64>,
    ) -> Result<Self> {
        let boundary = field.outer().clone();
        let mut samples = Vec::new();
        let mut q_values = Vec::new();
        let mut interior = Vec::new();
        for p in probe_edges(&field, params.h) {
            match p.grad {
                Some(g) => {
                    samples.push(BoundarySample { point: p.point, normal: p.normal, grad_mag: g });
                    q_values.push(q.eval(p.normal));
                    interior.push(p.interior);
                }
                None if p.interior => return Err(Error::NormalProbeFailed { x: p.point.x, y: p.point.y }),
                None => {}
            }
        }
        Ok(Self {
            boundary,
            field,
            q_used: q.clone(),
            params: *params,
            trace: BoundaryTrace { samples },
            q_values,
            interior,
            iterations,
            converged,
            history,
        })
    }

    pub fn boundary(&self) -> &ConvexPolygon {
        &self.boundary
    }

    pub fn core(&self) -> &ConvexPolygon {
        self.field.inner()
    }

    pub fn field(&self) -> &HarmonicField {
        &self.field
    }

    pub fn q_used(&self) -> &Anisotropy {
        &self.q_used
    }

    pub fn params(&self) -> &SolverParams {
        &self.params
    }

    /// Gradient samples at the midpoints of the boundary edges.
    pub fn trace(&self) -> &BoundaryTrace {
        &self.trace
    }

    /// `|∇u| - Q(n)` per trace sample.
    pub fn residuals(&self) -> Vec<f64> {
        self.trace.grads().zip(&self.q_values).map(|(g, q)| g - q).collect()
    }

    /// Whether each trace sample lies on a facet interior (edge at least half a cell long).
    pub fn interior_mask(&self) -> &[bool] {
        &self.interior
    }

    pub fn iterations(&self) -> usize {
        self.iterations
    }

    pub fn converged(&self) -> bool {
        self.converged
    }

    /// Maximum facet-interior relative residual per iteration.
    pub fn history(&self) -> &[f64] {
        &self.history
    }

    /// Maximum of `|∇u / Q(n) - 1|` over facet-interior samples.
    pub fn max_residual(&self) -> f64 {
        self.trace
            .grads()
            .zip(&self.q_values)
            .zip(&self.interior)
            .filter(|(_, &inside)| inside)
            .map(|((g, q), _)| math::abs(g / q - 1.0))
            .fold(0.0, f64::max)
    }

    /// Longest boundary edge.
    pub fn max_facet_length(&self) -> f64 {
        self.boundary.edges().map(|(a, b)| a.dist(b)).fold(0.0, f64::max)
    }
}

struct EdgeProbe {
    point: Point,
    normal: Direction,
    interior: bool,
    grad: Option<f64>,
}

fn probe_edges(field: &HarmonicField, h: f64) -> Vec<EdgeProbe> {
    let outer = field.outer();
    (0..outer.len())
        .map(|i| {
            let (a, b) = (outer.vertex(i), outer.vertex(i + 1));
            let point = (a + b) * 0.5;
            let normal = Direction::from_vector(outer.edge_inner_normal(i))
                .expect("edges of a valid polygon have nonzero length");
            EdgeProbe {
                point,
                normal,
                interior: a.dist(b) >= MIN_FACET_CELLS * h,
                grad: field.normal_gradient(point, normal).ok(),
            }
        })
        .collect()
}

/// Number of normals in the fan, about one per two cells of the initial boundary.
fn normal_count(r0: f64, h: f64) -> usize {
    let m = (math::ceil(PI * r0 / h) as usize).max(32);
    m.div_ceil(4) * 4
}

fn normal_index(outward: Direction, m: usize) -> usize {
    (math::floor(outward.theta() * m as f64 / TAU + 0.5) as usize) % m
}

/// Solves `(W + c D) x = W r` on a cycle, with `D` the periodic second difference
/// `2x_k - x_{k-1} - x_{k+1}` and `W = diag(w)`.
fn smooth_cyclic(r: &[f64], w: &[f64], c: f64) -> Vec<f64> {
    let n = r.len();
    let rhs: Vec<f64> = r.iter().zip(w).map(|(r, w)| r * w).collect();
    if c <= 0.0 {
        return r.to_vec();
    }
    // Sherman–Morrison reduction of the cyclic system to two tridiagonal solves.
    let off = -c;
    let gamma = -(w[0] + 2.0 * c);
    let mut diag: Vec<f64> = w.iter().map(|w| w + 2.0 * c).collect();
    diag[0] -= gamma;
    diag[n - 1] -= off * off / gamma;
    let thomas = |d: &[f64]| -> Vec<f64> {
        let mut cp = vec![0.0; n];
        let mut dp = vec![0.0; n];
        cp[0] = off / diag[0];
        dp[0] = d[0] / diag[0];
        for i in 1..n {
            let m = diag[i] - off * cp[i - 1];
            cp[i] = off / m;
            dp[i] = (d[i] - off * dp[i - 1]) / m;
        }
        let mut x = vec![0.0; n];
        x[n - 1] = dp[n - 1];
        for i in (0..n - 1).rev() {
            x[i] = dp[i] - cp[i] * x[i + 1];
        }
        x
    };
    let y = thomas(&rhs);
    let mut u = vec![0.0; n];
    u[0] = gamma;
    u[n - 1] = off;
    let z = thomas(&u);
    let fact = (y[0] + off * y[n - 1] / gamma) / (1.0 + z[0] + off * z[n - 1] / gamma);
    y.iter().zip(&z).map(|(y, z)| y - fact * z).collect()
}

fn polygon_from(normals: &[Direction], offsets: &[f64]) -> Result<ConvexPolygon> {
    let planes: Vec<(Direction, f64)> = normals.iter().copied().zip(offsets.iter().copied()).collect();
    ConvexPolygon::from_half_planes(&planes)
}

/// Minimal supersolution for a continuous anisotropy.
///
/// Starts from the circle of radius `ρ + 1/q_min + 2h` around the smallest enclosing
/// circle `B_ρ(c)` of `K`, which lies on the supersolution side of the radial problem with
/// speed `q_min`, and shrinks by trial iteration. Stops once the maximum facet-interior
/// relative residual stays below `fb_tol` for three consecutive iterations, then re-solves
/// the final annulus at the full linear tolerance.
pub fn solve_minimal(core: &ConvexPolygon, q: &Anisotropy, params: &SolverParams) -> Result<FreeBoundarySolution> {
    params.validate()?;
    if !q.is_continuous() {
        return Err(Error::InvalidAnisotropy("discontinuous anisotropy: use the monotone approximation scheme"));
    }
    let h = params.h;
    let (center, rho) = core.enclosing_circle();
    let r0 = rho + 1.0 / q.q_min() + 2.0 * h;
    let m = normal_count(r0, h);
    let normals: Vec<Direction> = (0..m).map(|k| Direction::new(TAU * k as f64 / m as f64)).collect();
    let min_gap = GAP_SAFETY * harmonic::MIN_GAP_CELLS * h;
    let floor: Vec<f64> = normals.iter().map(|&nu| core.support(nu) + min_gap).collect();
    let mut offsets: Vec<f64> = normals.iter().map(|nu| center.dot(nu.vector()) + r0).collect();
    let mut boundary = polygon_from(&normals, &offsets)?;

    let mut field: Option<HarmonicField> = None;
    let mut streak = 0;
    let mut scale: f64 = 1.0;
    let mut prev_max = f64::INFINITY;
    let mut best: Option<(f64, ConvexPolygon)> = None;
    let mut history = Vec::new();
    for it in 1..=params.max_iter {
        let mut problem = DirichletProblem::new(core, &boundary, h).tolerance(ITER_SOLVE_TOL);
        if let Some(prev) = field.as_ref() {
            problem = problem.warm_start(prev);
        }
        let current = problem.solve()?;

        let mut r = vec![0.0; m];
        let mut w = vec![MISSING_WEIGHT; m];
        let mut max_res: f64 = 0.0;
        for p in probe_edges(&current, h) {
            let Some(g) = p.grad else { continue };
            let qn = q.eval(p.normal);
            let rel = (g - qn) / qn;
            let k = normal_index(p.normal.opposite(), m);
            if p.interior {
                r[k] = rel;
                w[k] = 1.0;
                max_res = max_res.max(math::abs(rel));
            }
        }
        history.push(max_res);
        if best.as_ref().map_or(true, |(b, _)| max_res < *b) {
            best = Some((max_res, boundary.clone()));
        }

        streak = if max_res <= params.fb_tol { streak + 1 } else { 0 };
        if streak >= STOP_STREAK {
            let final_field = DirichletProblem::new(core, &boundary, h).warm_start(&current).solve()?;
            let sol = FreeBoundarySolution::assemble(final_field, q, params, it, true, history.clone())?;
            if sol.max_residual() <= params.fb_tol {
                return Ok(sol);
            }
            streak = 0;
        }

        if max_res > 1.5 * prev_max && max_res > params.fb_tol {
            scale = (0.5 * scale).max(1.0 / 64.0);
        }
        prev_max = max_res;

        let spacing = boundary.perimeter() / m as f64;
        let c = (params.smoothing / spacing) * (params.smoothing / spacing);
        let x = smooth_cyclic(&r, &w, c);
        for k in 0..m {
            let delta = (scale * params.step0 * x[k]).clamp(-h, h);
            offsets[k] = (boundary.support(normals[k]) + delta).max(floor[k]);
        }
        boundary = polygon_from(&normals, &offsets)?;
        field = Some(current);
    }

    let (_, poly) = best.expect("at least one iteration ran");
    let mut problem = DirichletProblem::new(core, &poly, h);
    if let Some(prev) = field.as_ref() {
        problem = problem.warm_start(prev);
    }
    let best_field = problem.solve()?;
    let sol = FreeBoundarySolution::assemble(best_field, q, params, params.max_iter, false, history)?;
    Err(Error::MaxIterExceeded { iterations: params.max_iter, best: Box::new(sol) })
}

/// Monotone approximation of a (possibly discontinuous) anisotropy: solves with
/// `Q^j = continuous_approx(q, j)` for each `j` of a strictly increasing schedule and
/// returns the stages together with the last one as the limit iterate.
pub fn solve_minimal_usc(
    core: &ConvexPolygon,
    q: &Anisotropy,
    schedule: &[f64],
    params: &SolverParams,
) -> Result<(Vec<FreeBoundarySolution>, FreeBoundarySolution)> {
    if schedule.is_empty() {
        return Err(Error::InvalidParams("empty j schedule"));
    }
    if schedule.iter().any(|j| !(*j > 0.0) || !j.is_finite()) || schedule.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParams("j schedule must be positive and strictly increasing"));
    }
    let mut stages = Vec::with_capacity(schedule.len());
    for &j in schedule {
        let qj = q.continuous_approx(j)?;
        stages.push(solve_minimal(core, &qj, params)?);
    }
    let limit = stages.last().cloned().expect("schedule is nonempty");
    Ok((stages, limit))
}

/// Gradient statistics on one boundary facet.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FacetStats {
    pub start: Point,
    pub end: Point,
    /// Inner normal.
    pub normal: Direction,
    /// Speed tested on the subsolution side: the lower envelope `liminf Q`.
    pub q_sub: f64,
    /// Speed tested on the supersolution side: the pointwise (upper) value of `Q`.
    pub q_super: f64,
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    pub samples: usize,
    /// `min |∇u| < q_sub (1 - fb_tol)`.
    pub sub_violation: bool,
    /// `max |∇u| > q_super (1 + fb_tol)`.
    pub super_violation: bool,
}

impl FacetStats {
    pub fn length(&self) -> f64 {
        self.start.dist(self.end)
    }

    /// Largest relative deviation of the sampled gradient from the tested speeds.
    pub fn max_rel_deviation(&self) -> f64 {
        math::abs(self.min / self.q_sub - 1.0).max(math::abs(self.max / self.q_super - 1.0))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResidualReport {
    pub facets: Vec<FacetStats>,
    pub fb_tol: f64,
    /// Edges shorter than half a cell, treated as corners and not reported.
    pub corners: usize,
}

impl ResidualReport {
    pub fn sub_violations(&self) -> usize {
        self.facets.iter().filter(|f| f.sub_violation).count()
    }

    pub fn super_violations(&self) -> usize {
        self.facets.iter().filter(|f| f.super_violation).count()
    }

    pub fn passes(&self) -> bool {
        self.facets.iter().all(|f| !f.sub_violation && !f.super_violation)
    }

    pub fn max_rel_deviation(&self) -> f64 {
        self.facets.iter().map(FacetStats::max_rel_deviation).fold(0.0, f64::max)
    }
}

/// Per-facet residual statistics against the solution's own anisotropy.
pub fn residual_report(sol: &FreeBoundarySolution) -> Result<ResidualReport> {
    residual_report_against(sol, &sol.q_used)
}

/// Per-facet residual statistics against an arbitrary (possibly discontinuous) `q`.
///
/// Each edge of at least half a cell carries `max(1, ⌊len/h⌋)` equally spaced interior
/// samples. The subsolution side is tested against `liminf Q` and the supersolution side
/// against the pointwise value, which differ only on jump angles.
pub fn residual_report_against(sol: &FreeBoundarySolution, q: &Anisotropy) -> Result<ResidualReport> {
    let h = sol.params.h;
    let tol = sol.params.fb_tol;
    let mut facets = Vec::new();
    let mut corners = 0;
    let b = &sol.boundary;
    for i in 0..b.len() {
        let (start, end) = (b.vertex(i), b.vertex(i + 1));
        let len = start.dist(end);
        if len < MIN_FACET_CELLS * h {
            corners += 1;
            continue;
        }
        let normal =
            Direction::from_vector(b.edge_inner_normal(i)).expect("edges of a valid polygon have nonzero length");
        let k = (math::floor(len / h) as usize).max(1);
        let (mut lo, mut hi, mut sum) = (f64::INFINITY, 0.0f64, 0.0);
        for s in 0..k {
            let t = (s as f64 + 0.5) / k as f64;
            let g = sol.field.normal_gradient(start + (end - start) * t, normal)?;
            lo = lo.min(g);
            hi = hi.max(g);
            sum += g;
        }
        let q_sub = q.eval_lower(normal);
        let q_super = q.eval(normal);
        facets.push(FacetStats {
            start,
            end,
            normal,
            q_sub,
            q_super,
            min: lo,
            max: hi,
            mean: sum / k as f64,
            samples: k,
            sub_violation: lo < q_sub * (1.0 - tol),
            super_violation: hi > q_super * (1.0 + tol),
        });
    }
    Ok(ResidualReport { facets, fb_tol: tol, corners })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompareVerdict {
    /// Both orderings hold within the slack.
    Equal,
    /// `a ≤ b`: support and field of `a` below those of `b`.
    ALeB,
    BLeA,
    Incomparable,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Comparison {
    pub verdict: CompareVerdict,
    /// Support slack `h + fb_tol · diam(K)`.
    pub slack: f64,
    /// `max_u (h_A(u) - h_B(u))`.
    pub support_excess_ab: f64,
    pub support_excess_ba: f64,
    /// Field tolerance `slack · q_max`.
    pub field_tol: f64,
    /// `max (u_a - u_b)` over the comparison lattice.
    pub field_excess_ab: f64,
    pub field_excess_ba: f64,
    pub lattice_points: usize,
}

/// Orders two solutions by support inclusion and pointwise field values.
///
/// Fields are compared on the lattice of the coarser spacing, skipping points within
/// `r_reg` of either free boundary. Spacings more than a factor four apart are rejected.
pub fn compare(a: &FreeBoundarySolution, b: &FreeBoundarySolution) -> Result<Comparison> {
    let (ha, hb) = (a.params.h, b.params.h);
    if ha.max(hb) > 4.0 * ha.min(hb) {
        return Err(Error::GridMismatch { h_a: ha, h_b: hb });
    }
    let hc = ha.max(hb);
    let fb_tol = a.params.fb_tol.max(b.params.fb_tol);
    let diam = a.core().diameter().max(b.core().diameter());
    let slack = hc + fb_tol * diam;
    let field_tol = slack * a.q_used.q_max().max(b.q_used.q_max());
    let r_reg = a.params.r_reg.max(b.params.r_reg);

    let support_excess_ab = geom::support_excess(&a.boundary, &b.boundary);
    let support_excess_ba = geom::support_excess(&b.boundary, &a.boundary);

    let (lo_a, hi_a) = a.boundary.bounding_box();
    let (lo_b, hi_b) = b.boundary.bounding_box();
    let lo = Point::new(lo_a.x.min(lo_b.x), lo_a.y.min(lo_b.y));
    let hi = Point::new(hi_a.x.max(hi_b.x), hi_a.y.max(hi_b.y));
    let (i0, i1) = (math::floor(lo.x / hc) as i64, math::ceil(hi.x / hc) as i64);
    let (j0, j1) = (math::floor(lo.y / hc) as i64, math::ceil(hi.y / hc) as i64);
    let (mut fab, mut fba) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    let mut count = 0;
    for j in j0..=j1 {
        for i in i0..=i1 {
            let p = Point::new(i as f64 * hc, j as f64 * hc);
            let near = |s: &FreeBoundarySolution| math::abs(s.boundary.signed_distance(p)) < r_reg;
            if near(a) || near(b) {
                continue;
            }
            let (va, vb) = (a.field.value_at(p), b.field.value_at(p));
            fab = fab.max(va - vb);
            fba = fba.max(vb - va);
            count += 1;
        }
    }
    let a_le_b = support_excess_ab <= slack && fab <= field_tol;
    let b_le_a = support_excess_ba <= slack && fba <= field_tol;
    let verdict = match (a_le_b, b_le_a) {
        (true, true) => CompareVerdict::Equal,
        (true, false) => CompareVerdict::ALeB,
        (false, true) => CompareVerdict::BLeA,
        (false, false) => CompareVerdict::Incomparable,
    };
    Ok(Comparison {
        verdict,
        slack,
        support_excess_ab,
        support_excess_ba,
        field_tol,
        field_excess_ab: fab,
        field_excess_ba: fba,
        lattice_points: count,
    })
}

/// Blow-up slope `lim u(x₀ + r n) / r` at a boundary point, estimated from the dyadic
/// distances `4h, 2h, h` along the inner normal and Richardson-extrapolated.
pub fn blowup_slope(sol: &FreeBoundarySolution, x0: Point) -> Result<f64> {
    let tol = 1e3 * EPS_GEOM * (1.0 + sol.boundary.diameter());
    let n = sol
        .boundary
        .inner_normal_at(x0, tol)
        .and_then(Direction::from_vector)
        .ok_or(Error::NormalProbeFailed { x: x0.x, y: x0.y })?;
    sol.field.dyadic_slope(x0, n, 4.0 * sol.params.h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radial_radius_solves_the_radial_equation() {
        for (rho, q) in [(1.0, 1.0), (1.0, 2.0), (0.5, 3.0), (2.0, 0.25)] {
            let r = radial_radius(rho, q);
            assert!(r > rho);
            assert!((r * (r / rho).ln() - 1.0 / q).abs() < 1e-12);
        }
    }

    #[test]
    fn cyclic_smoothing_matches_dense_solve() {
        let n = 9;
        let r: Vec<f64> = (0..n).map(|k| ((k * 37) % 11) as f64 / 11.0 - 0.4).collect();
        let w: Vec<f64> = (0..n).map(|k| if k % 4 == 1 { 1e-3 } else { 1.0 }).collect();
        let c = 2.5;
        let x = smooth_cyclic(&r, &w, c);
        for k in 0..n {
            let lhs = (w[k] + 2.0 * c) * x[k] - c * x[(k + n - 1) % n] - c * x[(k + 1) % n];
            assert!((lhs - w[k] * r[k]).abs() < 1e-12);
        }
    }

    #[test]
    fn normal_fan_indexing() {
        let m = normal_count(2.0, 0.02);
        assert_eq!(m % 4, 0);
        for k in 0..m {
            let d = Direction::new(TAU * k as f64 / m as f64 + 1e-9);
            assert_eq!(normal_index(d, m), k);
        }
    }

    #[test]
    fn rejects_bad_params() {
        let q = Anisotropy::constant(1.0).unwrap();
        let mut p = SolverParams::new(0.05, &q);
        p.fb_tol = 0.2;
        assert!(p.validate().is_err());
        p.fb_tol = 0.02;
        p.step0 = 0.0;
        assert!(p.validate().is_err());
    }
}
