use std::f64::consts::TAU;

use bernoulli_core::bernoulli::{compare, radial_radius, residual_report, solve_minimal};
use bernoulli_core::geom::support_excess;
use bernoulli_core::{Anisotropy, CompareVerdict, ConvexPolygon, FreeBoundarySolution, Point, SolverParams};
use serde::{Deserialize, Serialize};

use super::CheckContext;
use crate::error::Result;
use crate::io;
use crate::report::{CheckReport, Metric};

const ID: &str = "comparison";

/// Disk cores with constant speeds and the anisotropy `1 + amplitude · cos θ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ComparisonConfig {
    pub h: f64,
    pub radius: f64,
    /// Radius of the enlarged core in the nested-core pair.
    pub larger_radius: f64,
    pub segments: usize,
    pub amplitude: f64,
    /// Knots of the piecewise-linear anisotropy.
    pub knots: usize,
    /// Speed increment in the shifted pair.
    pub shift: f64,
    /// Dilation radius of the perturbed supersolution, in cells.
    pub dilation_cells: f64,
}

impl Default for ComparisonConfig {
    fn default() -> Self {
        Self {
            h: 0.04,
            radius: 1.0,
            larger_radius: 1.2,
            segments: 256,
            amplitude: 0.3,
            knots: 64,
            shift: 0.2,
            dilation_cells: 3.0,
        }
    }
}

fn cosine_speed(amplitude: f64, shift: f64, knots: usize) -> Result<Anisotropy> {
    let k = (0..knots)
        .map(|i| {
            let t = TAU * i as f64 / knots as f64;
            (t, 1.0 + shift + amplitude * t.cos())
        })
        .collect();
    Ok(Anisotropy::piecewise_linear(k)?)
}

struct Case {
    label: &'static str,
    sol: FreeBoundarySolution,
}

/// Minimal solutions ordered by the radial oracle: in each pair the first solution has the
/// faster speed or the smaller core and must lie below the second.
pub fn check_comparison(cfg: &ComparisonConfig, ctx: &CheckContext) -> Result<CheckReport> {
    let disk = |r: f64| ConvexPolygon::regular(cfg.segments, Point::default(), r, 0.0);
    let k = disk(cfg.radius)?;
    let k_large = disk(cfg.larger_radius)?;
    let aniso = cosine_speed(cfg.amplitude, 0.0, cfg.knots)?;
    let shifted = cosine_speed(cfg.amplitude, cfg.shift, cfg.knots)?;
    let q1 = Anisotropy::constant(1.0)?;
    let q2 = Anisotropy::constant(2.0)?;
    let q_min = Anisotropy::constant(aniso.q_min())?;
    let solve = |label: &'static str, core: &ConvexPolygon, q: &Anisotropy| -> Result<Case> {
        Ok(Case { label, sol: solve_minimal(core, q, &SolverParams::new(cfg.h, q))? })
    };
    let cases = [
        solve("disk_q1", &k, &q1)?,
        solve("disk_q2", &k, &q2)?,
        solve("large_disk_q1", &k_large, &q1)?,
        solve("disk_aniso", &k, &aniso)?,
        solve("disk_aniso_shifted", &k, &shifted)?,
        solve("disk_qmin", &k, &q_min)?,
    ];
    let [d_q1, d_q2, large_q1, d_an, d_sh, d_min] = &cases;

    // Oracle radii of the radial pairs; the first member must be the smaller one.
    let oracle = [
        ("speed", d_q2, d_q1, radial_radius(cfg.radius, 2.0), radial_radius(cfg.radius, 1.0)),
        ("core", d_q1, large_q1, radial_radius(cfg.radius, 1.0), radial_radius(cfg.larger_radius, 1.0)),
    ];
    let mut metrics = Vec::new();
    let mut notes = Vec::new();
    for (name, a, b, ra, rb) in oracle {
        notes.push(format!("{name}: oracle radii {ra:.6} < {rb:.6}"));
        push_pair(&mut metrics, ctx, name, a, b, ra < rb)?;
    }
    // Pointwise speed ordering gives the sign for the anisotropic pairs.
    let below = |a: &Anisotropy, b: &Anisotropy| {
        (0..720).all(|i| a.eval_angle(TAU * i as f64 / 720.0) >= b.eval_angle(TAU * i as f64 / 720.0))
    };
    push_pair(&mut metrics, ctx, "radial_supersolution", d_an, d_min, below(&aniso, &q_min))?;
    push_pair(&mut metrics, ctx, "shift", d_sh, d_an, below(&shifted, &aniso))?;

    // The exact radial supersolution for the smallest speed contains the minimal solution.
    let r_super = radial_radius(cfg.radius, aniso.q_min());
    let exact = disk(r_super)?;
    let slack = pair_slack(ctx, d_an, d_min)?;
    metrics.push(Metric::at_most(
        "radial_supersolution.oracle_excess",
        support_excess(d_an.sol.boundary(), &exact),
        slack,
    ));

    let own = compare(&d_an.sol, &d_an.sol)?;
    metrics.push(Metric::at_least("self.equal", f64::from(u8::from(own.verdict == CompareVerdict::Equal)), 1.0));

    // A dilated minimal solution re-solved on its own boundary is a strict supersolution.
    let dilated = FreeBoundarySolution::evaluate(
        &k,
        d_an.sol.boundary().dilate(cfg.dilation_cells * cfg.h),
        &aniso,
        d_an.sol.params(),
    )?;
    let rep = residual_report(&dilated)?;
    metrics.push(Metric::at_most("dilated.super_violations", rep.super_violations() as f64, 0.0));
    let c = compare(&d_an.sol, &dilated)?;
    metrics.push(Metric::at_least("dilated.ordered", f64::from(u8::from(c.verdict == CompareVerdict::ALeB)), 1.0));

    let mut report = CheckReport::from_metrics(ID, metrics);
    report.notes = notes;
    for case in &cases {
        ctx.csv(&mut report.artifacts, &format!("{}.csv", case.label), &io::polygon_rows(case.sol.boundary()), false)?;
    }
    ctx.csv(&mut report.artifacts, "dilated.csv", &io::polygon_rows(dilated.boundary()), false)?;
    Ok(report)
}

fn pair_slack(ctx: &CheckContext, a: &Case, b: &Case) -> Result<f64> {
    Ok(ctx.thresholds.get_opt("slack").unwrap_or(compare(&a.sol, &b.sol)?.slack))
}

/// Records the support excess of `a` over `b` and whether the verdict is `a ≤ b`.
fn push_pair(
    metrics: &mut Vec<Metric>,
    ctx: &CheckContext,
    name: &str,
    a: &Case,
    b: &Case,
    expect_a_below: bool,
) -> Result<()> {
    let c = compare(&a.sol, &b.sol)?;
    let slack = ctx.thresholds.get_opt("slack").unwrap_or(c.slack);
    let (lo, hi) = if expect_a_below { (a, b) } else { (b, a) };
    let expected = if expect_a_below { CompareVerdict::ALeB } else { CompareVerdict::BLeA };
    metrics.push(Metric::at_most(
        format!("{name}.support_excess"),
        support_excess(lo.sol.boundary(), hi.sol.boundary()),
        slack,
    ));
    metrics.push(Metric::at_least(format!("{name}.ordered"), f64::from(u8::from(c.verdict == expected)), 1.0));
    Ok(())
}
