//! Experiment configuration files (TOML). Unknown keys are rejected everywhere.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use bernoulli_core::{Anisotropy, ConvexPolygon, Point, SolverParams};
use serde::Deserialize;

use crate::checks::{
    CheckId, ComparisonConfig, CounterexampleConfig, FacetConvexityConfig, MonotoneUscConfig, StraszewiczConfig,
};
use crate::error::{LabError, Result};

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Output directory; `--out` takes precedence.
    pub output: Option<PathBuf>,
    pub geometry: Option<GeometrySpec>,
    pub anisotropy: Option<AnisotropySpec>,
    #[serde(default)]
    pub solver: SolverSpec,
    pub suite: Option<SuiteSpec>,
}

/// The core body `K`.
#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case", deny_unknown_fields)]
pub enum GeometrySpec {
    Disk {
        #[serde(default)]
        center: [f64; 2],
        radius: f64,
        #[serde(default = "default_segments")]
        segments: usize,
    },
    Square {
        #[serde(default)]
        center: [f64; 2],
        half_width: f64,
    },
    Rectangle {
        min: [f64; 2],
        max: [f64; 2],
    },
    Regular {
        #[serde(default)]
        center: [f64; 2],
        radius: f64,
        sides: usize,
        #[serde(default)]
        rotation: f64,
    },
    Polygon {
        vertices: Vec<[f64; 2]>,
    },
}

fn default_segments() -> usize {
    256
}

/// Angles in radians; knots are `[theta, value]` pairs.
#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum AnisotropySpec {
    Constant { value: f64 },
    PiecewiseLinear { knots: Vec<[f64; 2]> },
    UscJumps { knots: Vec<[f64; 2]>, jumps: Vec<[f64; 2]> },
}

/// Overrides of the solver defaults. `j_schedule` drives the monotone approximation and
/// is required for anisotropies with jumps.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverSpec {
    pub h: Option<f64>,
    pub fb_tol: Option<f64>,
    pub step0: Option<f64>,
    pub max_iter: Option<usize>,
    pub r_reg: Option<f64>,
    pub smoothing: Option<f64>,
    pub j_schedule: Option<Vec<f64>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteSpec {
    /// Checks to run, in order.
    #[serde(default = "all_checks")]
    pub checks: Vec<String>,
    /// Threshold overrides keyed `check.name`.
    #[serde(default)]
    pub thresholds: BTreeMap<String, f64>,
    #[serde(default)]
    pub facet_convexity: FacetConvexityConfig,
    #[serde(default)]
    pub counterexample: CounterexampleConfig,
    #[serde(default)]
    pub comparison: ComparisonConfig,
    #[serde(default)]
    pub straszewicz: StraszewiczConfig,
    #[serde(default)]
    pub monotone_usc: MonotoneUscConfig,
}

fn all_checks() -> Vec<String> {
    CheckId::ALL.iter().map(|c| c.name().to_string()).collect()
}

impl Default for SuiteSpec {
    fn default() -> Self {
        Self {
            checks: all_checks(),
            thresholds: BTreeMap::new(),
            facet_convexity: Default::default(),
            counterexample: Default::default(),
            comparison: Default::default(),
            straszewicz: Default::default(),
            monotone_usc: Default::default(),
        }
    }
}

impl SuiteSpec {
    /// The selected checks; unknown names are a configuration error.
    pub fn selected(&self) -> Result<Vec<CheckId>> {
        self.checks
            .iter()
            .enumerate()
            .map(|(i, name)| {
                CheckId::parse(name).ok_or_else(|| {
                    LabError::ConfigInvalid(format!(
                        "suite.checks[{i}]: unknown check `{name}` (expected one of {})",
                        all_checks().join(", ")
                    ))
                })
            })
            .collect()
    }

    /// Rejects override keys that no check reads.
    pub fn validate_thresholds(&self) -> Result<()> {
        for key in self.thresholds.keys() {
            let known = key
                .split_once('.')
                .and_then(|(check, name)| Some((CheckId::parse(check)?, name)))
                .is_some_and(|(check, name)| check.threshold_keys().contains(&name));
            if !known {
                return Err(LabError::ConfigInvalid(format!("suite.thresholds: unknown key `{key}`")));
            }
        }
        Ok(())
    }

    /// Overrides for one check, keyed by the part after the dot.
    pub fn thresholds_for(&self, check: CheckId) -> Thresholds {
        let prefix = format!("{}.", check.name());
        Thresholds(
            self.thresholds.iter().filter_map(|(k, v)| k.strip_prefix(&prefix).map(|n| (n.to_string(), *v))).collect(),
        )
    }
}

/// Threshold overrides for a single check.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Thresholds(pub BTreeMap<String, f64>);

impl Thresholds {
    pub fn get(&self, key: &str, default: f64) -> f64 {
        self.0.get(key).copied().unwrap_or(default)
    }

    pub fn get_opt(&self, key: &str) -> Option<f64> {
        self.0.get(key).copied()
    }
}

fn invalid(msg: String) -> LabError {
    LabError::ConfigInvalid(msg)
}

fn point(p: [f64; 2]) -> Point {
    Point::new(p[0], p[1])
}

fn knots(key: &str, raw: &[[f64; 2]]) -> Result<Vec<(f64, f64)>> {
    if raw.is_empty() {
        return Err(invalid(format!("{key}: at least one knot is required")));
    }
    raw.iter()
        .enumerate()
        .map(|(i, &[t, v])| {
            if !(v > 0.0) || !v.is_finite() || !t.is_finite() {
                Err(invalid(format!("{key}[{i}]: speed must be positive and finite (Q > 0), got {v}")))
            } else {
                Ok((t, v))
            }
        })
        .collect()
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| invalid(e.message().to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| invalid(format!("{}: {}", path.display(), e.message())))
    }

    pub fn core(&self) -> Result<ConvexPolygon> {
        let spec = self.geometry.as_ref().ok_or_else(|| invalid("missing [geometry] table".into()))?;
        let poly = match *spec {
            GeometrySpec::Disk { center, radius, segments } => {
                if !(radius > 0.0) {
                    return Err(invalid(format!("geometry.radius must be positive, got {radius}")));
                }
                if segments < 3 {
                    return Err(invalid(format!("geometry.segments must be at least 3, got {segments}")));
                }
                ConvexPolygon::regular(segments, point(center), radius, 0.0)
            }
            GeometrySpec::Square { center, half_width } => {
                if !(half_width > 0.0) {
                    return Err(invalid(format!("geometry.half_width must be positive, got {half_width}")));
                }
                let c = point(center);
                ConvexPolygon::rectangle(c.x - half_width, c.y - half_width, c.x + half_width, c.y + half_width)
            }
            GeometrySpec::Rectangle { min, max } => ConvexPolygon::rectangle(min[0], min[1], max[0], max[1]),
            GeometrySpec::Regular { center, radius, sides, rotation } => {
                if !(radius > 0.0) || sides < 3 {
                    return Err(invalid("geometry: regular polygons need radius > 0 and sides >= 3".into()));
                }
                ConvexPolygon::regular(sides, point(center), radius, rotation)
            }
            GeometrySpec::Polygon { ref vertices } => ConvexPolygon::new(vertices.iter().copied().map(point).collect()),
        };
        poly.map_err(|e| invalid(format!("geometry: {e}")))
    }

    pub fn anisotropy(&self) -> Result<Anisotropy> {
        let spec = self.anisotropy.as_ref().ok_or_else(|| invalid("missing [anisotropy] table".into()))?;
        let q = match spec {
            AnisotropySpec::Constant { value } => {
                if !(*value > 0.0) || !value.is_finite() {
                    return Err(invalid(format!(
                        "anisotropy.value: speed must be positive and finite (Q > 0), got {value}"
                    )));
                }
                Anisotropy::constant(*value)
            }
            AnisotropySpec::PiecewiseLinear { knots: k } => Anisotropy::piecewise_linear(knots("anisotropy.knots", k)?),
            AnisotropySpec::UscJumps { knots: k, jumps } => {
                let base = knots("anisotropy.knots", k)?;
                let jumps = if jumps.is_empty() {
                    return Err(invalid("anisotropy.jumps: at least one jump is required".into()));
                } else {
                    knots("anisotropy.jumps", jumps)?
                };
                Anisotropy::usc_jumps(base, jumps)
            }
        };
        q.map_err(|e| invalid(format!("anisotropy: {e}")))
    }

    /// Solver parameters: defaults for `h` (or `0.02 diam K`) with the overrides applied.
    pub fn params(&self, core: &ConvexPolygon, q: &Anisotropy) -> Result<SolverParams> {
        let s = &self.solver;
        let mut p = match s.h {
            Some(h) => SolverParams::new(h, q),
            None => SolverParams::for_core(core, q),
        };
        if s.h.is_some() && s.r_reg.is_none() {
            p.r_reg = 4.0 * p.h;
        }
        if let Some(v) = s.fb_tol {
            p.fb_tol = v;
        }
        if let Some(v) = s.step0 {
            p.step0 = v;
            if s.smoothing.is_none() {
                p.smoothing = 0.5 * v;
            }
        }
        if let Some(v) = s.max_iter {
            p.max_iter = v;
        }
        if let Some(v) = s.r_reg {
            p.r_reg = v;
        }
        if let Some(v) = s.smoothing {
            p.smoothing = v;
        }
        p.validate().map_err(|e| invalid(format!("solver: {e}")))?;
        Ok(p)
    }

    /// The approximation schedule, required exactly when `q` has jumps.
    pub fn j_schedule(&self, q: &Anisotropy) -> Result<Option<Vec<f64>>> {
        match (&self.solver.j_schedule, q.is_continuous()) {
            (None, false) => Err(invalid("solver.j_schedule is required for an anisotropy with jumps".into())),
            (Some(js), _) => {
                if js.is_empty() || js.iter().any(|j| !(*j > 0.0)) || js.windows(2).any(|w| w[1] <= w[0]) {
                    return Err(invalid("solver.j_schedule must be positive and strictly increasing".into()));
                }
                Ok(Some(js.clone()))
            }
            (None, true) => Ok(None),
        }
    }

    /// The suite section, or the default suite when absent.
    pub fn suite(&self) -> SuiteSpec {
        self.suite.clone().unwrap_or_default()
    }
}
