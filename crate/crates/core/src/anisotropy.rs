//! Boundary speed `Q` on the unit circle.
//!
//! Three representations are supported: constants, periodic piecewise-linear functions of
//! the angle, and piecewise-linear bases with finitely many upward point jumps (an upper
//! semicontinuous function). [`Anisotropy::continuous_approx`] produces the Lipschitz
//! sup-convolution `Q^j(n) = sup_{n'} (Q(n') - j d(n, n'))`, which decreases to `Q` as `j`
//! grows.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geom::Direction;
use crate::math::{self, PI, TAU};

/// Angular tolerance for recognising a jump angle.
const JUMP_ANGLE_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub enum AnisotropyKind {
    Constant(f64),
    /// Periodic linear interpolation between `(theta, value)` knots sorted in `[0, 2π)`.
    PiecewiseLinear(Vec<(f64, f64)>),
    /// Continuous base plus isolated jump values strictly above the base.
    UscJumps {
        base: Vec<(f64, f64)>,
        jumps: Vec<(f64, f64)>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Anisotropy {
    kind: AnisotropyKind,
    q_min: f64,
    q_max: f64,
}

impl Anisotropy {
    pub fn constant(c: f64) -> Result<Self> {
        if !(c > 0.0) || !c.is_finite() {
            return Err(Error::InvalidAnisotropy("value must be positive and finite"));
        }
        Ok(Self { kind: AnisotropyKind::Constant(c), q_min: c, q_max: c })
    }

    pub fn piecewise_linear(knots: Vec<(f64, f64)>) -> Result<Self> {
        let knots = normalize_knots(knots)?;
        let (q_min, q_max) = knot_bounds(&knots);
        Ok(Self { kind: AnisotropyKind::PiecewiseLinear(knots), q_min, q_max })
    }

    pub fn usc_jumps(base: Vec<(f64, f64)>, jumps: Vec<(f64, f64)>) -> Result<Self> {
        let base = normalize_knots(base)?;
        let mut js: Vec<(f64, f64)> = Vec::with_capacity(jumps.len());
        for (t, v) in jumps {
            if !t.is_finite() || !v.is_finite() {
                return Err(Error::InvalidAnisotropy("non-finite jump"));
            }
            let t = math::wrap_angle(t);
            if !(v > interpolate(&base, t)) {
                return Err(Error::InvalidAnisotropy("jump value must exceed the base value at its angle"));
            }
            if js.iter().any(|&(s, _)| math::angle_dist(s, t) <= JUMP_ANGLE_TOL) {
                return Err(Error::InvalidAnisotropy("duplicate jump angle"));
            }
            js.push((t, v));
        }
        js.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (q_min, mut q_max) = knot_bounds(&base);
        for &(_, v) in &js {
            q_max = q_max.max(v);
        }
        Ok(Self { kind: AnisotropyKind::UscJumps { base, jumps: js }, q_min, q_max })
    }

    pub fn kind(&self) -> &AnisotropyKind {
        &self.kind
    }

    /// Tight `(q_min, q_max)` over all directions.
    pub fn bounds(&self) -> (f64, f64) {
        (self.q_min, self.q_max)
    }

    pub fn q_min(&self) -> f64 {
        self.q_min
    }

    pub fn q_max(&self) -> f64 {
        self.q_max
    }

    pub fn is_continuous(&self) -> bool {
        !matches!(&self.kind, AnisotropyKind::UscJumps { jumps, .. } if !jumps.is_empty())
    }

    pub fn is_constant(&self) -> bool {
        matches!(self.kind, AnisotropyKind::Constant(_))
    }

    pub fn jump_angles(&self) -> Vec<f64> {
        match &self.kind {
            AnisotropyKind::UscJumps { jumps, .. } => jumps.iter().map(|j| j.0).collect(),
            _ => Vec::new(),
        }
    }

    pub fn eval(&self, n: Direction) -> f64 {
        self.eval_angle(n.theta())
    }

    /// Pointwise value; jump angles return their (upper) jump value.
    pub fn eval_angle(&self, theta: f64) -> f64 {
        let theta = math::wrap_angle(theta);
        match &self.kind {
            AnisotropyKind::Constant(c) => *c,
            AnisotropyKind::PiecewiseLinear(knots) => interpolate(knots, theta),
            AnisotropyKind::UscJumps { base, jumps } => jumps
                .iter()
                .find(|&&(t, _)| math::angle_dist(t, theta) <= JUMP_ANGLE_TOL)
                .map_or_else(|| interpolate(base, theta), |&(_, v)| v),
        }
    }

    /// Lower semicontinuous envelope `liminf_{n' → n} Q(n')`: jumps are ignored.
    pub fn eval_lower(&self, n: Direction) -> f64 {
        match &self.kind {
            AnisotropyKind::UscJumps { base, .. } => interpolate(base, n.theta()),
            _ => self.eval(n),
        }
    }

    /// Largest absolute slope `|dQ/dθ|` of the continuous part.
    pub fn max_slope(&self) -> f64 {
        match &self.kind {
            AnisotropyKind::Constant(_) => 0.0,
            AnisotropyKind::PiecewiseLinear(k) | AnisotropyKind::UscJumps { base: k, .. } => {
                knot_slopes(k).fold(0.0, f64::max)
            }
        }
    }

    /// Sup-convolution `Q^j(n) = sup_{n'} (Q(n') - j d_geo(n, n'))`, computed exactly.
    ///
    /// The map `n' ↦ Q(n') - j d(n, n')` is piecewise linear with breakpoints at the knots,
    /// at `n` and at `-n`, plus the isolated jump values, so its supremum is a maximum over
    /// finitely many candidates. The result is again piecewise linear in the angle and is
    /// returned with its exact knots.
    pub fn continuous_approx(&self, j: f64) -> Result<Anisotropy> {
        if !(j > 0.0) || !j.is_finite() {
            return Err(Error::InvalidAnisotropy("Lipschitz constant must be positive"));
        }
        if self.is_constant() {
            return Ok(self.clone());
        }
        let env = Envelope::new(self, j);
        let knots = env.knots();
        Anisotropy::piecewise_linear(knots)
    }
}

/// The finitely many piecewise-linear pieces whose maximum is `Q^j`.
struct Envelope<'a> {
    base: &'a [(f64, f64)],
    /// Cone apexes `(theta, value)`: knots and jumps.
    apexes: Vec<(f64, f64)>,
    j: f64,
}

type Knots<'a> = &'a [(f64, f64)];

impl<'a> Envelope<'a> {
    fn new(q: &'a Anisotropy, j: f64) -> Self {
        let (base, jumps): (Knots, Knots) = match &q.kind {
            AnisotropyKind::PiecewiseLinear(k) => (k, &[]),
            AnisotropyKind::UscJumps { base, jumps } => (base, jumps),
            AnisotropyKind::Constant(_) => unreachable!("constants are fixed points"),
        };
        let apexes = base.iter().chain(jumps.iter()).copied().collect();
        Self { base, apexes, j }
    }

    fn eval(&self, theta: f64) -> f64 {
        let mut v = interpolate(self.base, theta);
        v = v.max(interpolate(self.base, theta + PI) - self.j * PI);
        for &(t, q) in &self.apexes {
            v = v.max(q - self.j * math::angle_dist(theta, t));
        }
        v
    }

    /// Candidate breakpoints of each piece, then all pairwise crossings of the linear
    /// pieces between consecutive candidates. Superfluous knots are harmless.
    fn knots(&self) -> Vec<(f64, f64)> {
        let mut cuts: Vec<f64> = Vec::new();
        for &(t, _) in self.base {
            cuts.push(t);
            cuts.push(math::wrap_angle(t + PI));
        }
        for &(t, _) in &self.apexes {
            cuts.push(t);
            cuts.push(math::wrap_angle(t + PI));
        }
        cuts.push(0.0);
        sort_dedup(&mut cuts);
        let m = cuts.len();
        let mut all = cuts.clone();
        for k in 0..m {
            let lo = cuts[k];
            let hi = if k + 1 < m { cuts[k + 1] } else { TAU };
            if hi - lo <= 1e-14 {
                continue;
            }
            let lines = self.lines_on(lo, hi);
            for (i, &(a1, b1)) in lines.iter().enumerate() {
                for &(a2, b2) in &lines[i + 1..] {
                    let ds = b1 - b2;
                    if math::abs(ds) > 1e-300 {
                        let t = lo + (a2 - a1) / ds;
                        if t > lo && t < hi {
                            all.push(t);
                        }
                    }
                }
            }
        }
        sort_dedup(&mut all);
        all.into_iter().map(|t| (t, self.eval(t))).collect()
    }

    /// Every piece restricted to `[lo, hi]` as `value(lo) + slope (t - lo)`.
    fn lines_on(&self, lo: f64, hi: f64) -> Vec<(f64, f64)> {
        let line = |f: &dyn Fn(f64) -> f64| {
            let (a, b) = (f(lo), f(hi));
            (a, (b - a) / (hi - lo))
        };
        let mut out = Vec::with_capacity(self.apexes.len() + 2);
        out.push(line(&|t| interpolate_unwrapped(self.base, t, lo, hi)));
        out.push(line(&|t| interpolate_unwrapped(self.base, t + PI, lo + PI, hi + PI) - self.j * PI));
        for &(c, q) in &self.apexes {
            let mid = 0.5 * (lo + hi);
            // The distance is linear on the interval; evaluate its affine extension.
            let d_mid = math::angle_dist(mid, c);
            let slope = {
                let s = math::wrap_angle(mid - c);
                if s < PI {
                    1.0
                } else {
                    -1.0
                }
            };
            out.push(line(&|t| q - self.j * (d_mid + slope * (t - mid))));
        }
        out
    }
}

/// Piece of the base on `[lo, hi]` extended affinely, so endpoints on knots are exact.
fn interpolate_unwrapped(knots: &[(f64, f64)], t: f64, lo: f64, hi: f64) -> f64 {
    let mid = 0.5 * (lo + hi);
    let slope = segment_slope(knots, mid);
    interpolate(knots, mid) + slope * (t - mid)
}

fn sort_dedup(v: &mut Vec<f64>) {
    for t in v.iter_mut() {
        *t = math::wrap_angle(*t);
    }
    v.sort_by(f64::total_cmp);
    v.dedup_by(|a, b| math::abs(*a - *b) <= 1e-14);
    if v.len() > 1 && TAU - v[v.len() - 1] <= 1e-14 && v[0] <= 1e-14 {
        v.pop();
    }
}

fn normalize_knots(knots: Vec<(f64, f64)>) -> Result<Vec<(f64, f64)>> {
    if knots.is_empty() {
        return Err(Error::InvalidAnisotropy("at least one knot is required"));
    }
    let mut ks: Vec<(f64, f64)> = Vec::with_capacity(knots.len());
    for (t, v) in knots {
        if !t.is_finite() || !v.is_finite() {
            return Err(Error::InvalidAnisotropy("non-finite knot"));
        }
        if !(v > 0.0) {
            return Err(Error::InvalidAnisotropy("values must be positive"));
        }
        ks.push((math::wrap_angle(t), v));
    }
    ks.sort_by(|a, b| a.0.total_cmp(&b.0));
    for w in ks.windows(2) {
        if w[1].0 - w[0].0 <= 1e-14 {
            return Err(Error::InvalidAnisotropy("duplicate knot angle"));
        }
    }
    Ok(ks)
}

fn knot_bounds(knots: &[(f64, f64)]) -> (f64, f64) {
    knots.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &(_, v)| (lo.min(v), hi.max(v)))
}

/// Index `i` of the knot interval `[t_i, t_{i+1})` containing `theta` (cyclically), and the
/// unwrapped interval endpoints.
fn locate(knots: &[(f64, f64)], theta: f64) -> (usize, f64, f64) {
    let n = knots.len();
    let theta = math::wrap_angle(theta);
    let idx = knots.partition_point(|k| k.0 <= theta);
    if idx == 0 {
        // Before the first knot: interval from the last knot (shifted down a period).
        (n - 1, knots[n - 1].0 - TAU, knots[0].0)
    } else if idx == n {
        (n - 1, knots[n - 1].0, knots[0].0 + TAU)
    } else {
        (idx - 1, knots[idx - 1].0, knots[idx].0)
    }
}

fn interpolate(knots: &[(f64, f64)], theta: f64) -> f64 {
    let n = knots.len();
    if n == 1 {
        return knots[0].1;
    }
    let theta = math::wrap_angle(theta);
    let (i, lo, hi) = locate(knots, theta);
    let (v0, v1) = (knots[i].1, knots[(i + 1) % n].1);
    let mut t = theta;
    if t < lo {
        t += TAU;
    }
    if t > hi {
        t -= TAU;
    }
    v0 + (v1 - v0) * (t - lo) / (hi - lo)
}

fn segment_slope(knots: &[(f64, f64)], theta: f64) -> f64 {
    let n = knots.len();
    if n == 1 {
        return 0.0;
    }
    let (i, lo, hi) = locate(knots, theta);
    (knots[(i + 1) % n].1 - knots[i].1) / (hi - lo)
}

fn knot_slopes(knots: &[(f64, f64)]) -> impl Iterator<Item = f64> + '_ {
    let n = knots.len();
    (0..n).map(move |i| {
        if n == 1 {
            return 0.0;
        }
        let (t0, v0) = knots[i];
        let (mut t1, v1) = knots[(i + 1) % n];
        if t1 <= t0 {
            t1 += TAU;
        }
        math::abs((v1 - v0) / (t1 - t0))
    })
}
