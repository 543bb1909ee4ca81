//! Verification experiments. Each check returns a [`CheckReport`] whose metrics carry
//! their thresholds; threshold overrides come from the suite configuration.

mod comparison;
mod counterexample;
mod facet;
mod straszewicz;
mod usc;

use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

use crate::config::{SuiteSpec, Thresholds};
use crate::error::Result;
use crate::io;
use crate::report::CheckReport;

pub use comparison::{check_comparison, ComparisonConfig};
pub use counterexample::{check_counterexample, CounterexampleConfig};
pub use facet::{check_facet_convexity, FacetConvexityConfig};
pub use straszewicz::{check_straszewicz, StraszewiczConfig};
pub use usc::{check_monotone_usc, MonotoneUscConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CheckId {
    FacetConvexity,
    Counterexample,
    Comparison,
    Straszewicz,
    MonotoneUsc,
}

impl CheckId {
    pub const ALL: [CheckId; 5] = [
        CheckId::FacetConvexity,
        CheckId::Counterexample,
        CheckId::Comparison,
        CheckId::Straszewicz,
        CheckId::MonotoneUsc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::FacetConvexity => "facet_convexity",
            CheckId::Counterexample => "counterexample",
            CheckId::Comparison => "comparison",
            CheckId::Straszewicz => "straszewicz",
            CheckId::MonotoneUsc => "monotone_usc",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == name)
    }

    /// Keys accepted under `suite.thresholds` as `check.key`.
    pub fn threshold_keys(self) -> &'static [&'static str] {
        match self {
            CheckId::FacetConvexity => &["tol_conv"],
            CheckId::Counterexample => &["max_rel_error", "convexity_tol"],
            CheckId::Comparison => &["slack"],
            CheckId::Straszewicz => &["constant"],
            CheckId::MonotoneUsc => &["inclusion_slack", "sandwich_slack", "approx_tol"],
        }
    }
}

/// Threshold overrides and the artifact directory of one check run.
#[derive(Clone, Debug, Default)]
pub struct CheckContext {
    pub thresholds: Thresholds,
    pub dir: Option<PathBuf>,
}

impl CheckContext {
    pub fn new(thresholds: Thresholds, dir: Option<&Path>) -> Self {
        Self { thresholds, dir: dir.map(Path::to_path_buf) }
    }

    /// Writes a CSV artifact when an output directory is set.
    fn csv<T: Serialize>(&self, artifacts: &mut Vec<PathBuf>, name: &str, rows: &[T], header: bool) -> Result<()> {
        if let Some(dir) = &self.dir {
            std::fs::create_dir_all(dir)?;
            let path = dir.join(name);
            io::write_rows(&path, rows, header)?;
            artifacts.push(path);
        }
        Ok(())
    }
}

/// Runs one check; errors become failed reports so that a suite always completes.
pub fn run_check(id: CheckId, suite: &SuiteSpec, dir: Option<&Path>) -> CheckReport {
    let ctx = CheckContext::new(suite.thresholds_for(id), dir);
    let start = Instant::now();
    let result = match id {
        CheckId::FacetConvexity => check_facet_convexity(&suite.facet_convexity, &ctx),
        CheckId::Counterexample => check_counterexample(&suite.counterexample, &ctx),
        CheckId::Comparison => check_comparison(&suite.comparison, &ctx),
        CheckId::Straszewicz => check_straszewicz(&suite.straszewicz, &ctx),
        CheckId::MonotoneUsc => check_monotone_usc(&suite.monotone_usc, &ctx),
    };
    let mut report = result.unwrap_or_else(|e| CheckReport::errored(id.name(), e.to_string()));
    report.runtime = start.elapsed().as_secs_f64();
    report
}

/// Label for a numeric parameter inside metric names.
fn tag(x: f64) -> String {
    format!("{x}")
}
