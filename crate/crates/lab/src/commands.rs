//! The `solve`, `verify` and `plot` commands. The binary only parses arguments and maps
//! outcomes to exit codes.

use std::path::{Path, PathBuf};

use bernoulli_core::bernoulli::{solve_minimal, solve_minimal_usc};
use bernoulli_core::Error as CoreError;

use crate::bundle;
use crate::checks::CheckId;
use crate::config::ExperimentConfig;
use crate::error::{LabError, Result};
use crate::report::CheckReport;
use crate::suite::run_checks;

pub const EXIT_OK: u8 = 0;
pub const EXIT_ERROR: u8 = 1;
pub const EXIT_NOT_CONVERGED: u8 = 2;

#[derive(Clone, Debug, PartialEq)]
pub struct SolveOutcome {
    pub converged: bool,
    pub iterations: usize,
    pub max_residual: f64,
    pub out: PathBuf,
}

fn output_dir(cli: Option<&Path>, cfg: &ExperimentConfig) -> Result<PathBuf> {
    cli.map(Path::to_path_buf)
        .or_else(|| cfg.output.clone())
        .ok_or_else(|| LabError::ConfigInvalid("output: no output directory (set `output` or pass --out)".into()))
}

/// Solves the configured problem and writes its bundle (stage and limit bundles for a
/// `j_schedule`). A run out of iterations still writes the best iterate.
pub fn cmd_solve(config: &Path, out: Option<&Path>) -> Result<SolveOutcome> {
    let cfg = ExperimentConfig::load(config)?;
    let core = cfg.core()?;
    let q = cfg.anisotropy()?;
    let params = cfg.params(&core, &q)?;
    let schedule = cfg.j_schedule(&q)?;
    let out = output_dir(out, &cfg)?;
    let result = match &schedule {
        Some(js) => solve_minimal_usc(&core, &q, js, &params),
        None => solve_minimal(&core, &q, &params).map(|s| (Vec::new(), s)),
    };
    match result {
        Ok((stages, limit)) => {
            match &schedule {
                Some(js) => bundle::write_usc_bundles(&out, &q, js, &stages, &limit)?,
                None => {
                    bundle::write_bundle(&out, &limit, &q, None)?;
                }
            }
            Ok(SolveOutcome {
                converged: true,
                iterations: limit.iterations(),
                max_residual: limit.max_residual(),
                out,
            })
        }
        Err(CoreError::MaxIterExceeded { iterations, best }) => {
            bundle::write_bundle(&out, &best, best.q_used(), None)?;
            Ok(SolveOutcome { converged: false, iterations, max_residual: best.max_residual(), out })
        }
        Err(e) => Err(e.into()),
    }
}

/// Runs the suite of a configuration file (the default suite without one). `only`
/// restricts the run to the named checks.
pub fn cmd_verify(config: Option<&Path>, only: &[String], jobs: usize, out: Option<&Path>) -> Result<Vec<CheckReport>> {
    let cfg = match config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::default(),
    };
    let suite = cfg.suite();
    let ids = if only.is_empty() {
        suite.selected()?
    } else {
        only.iter()
            .map(|n| CheckId::parse(n).ok_or_else(|| LabError::ConfigInvalid(format!("--only: unknown check `{n}`"))))
            .collect::<Result<Vec<_>>>()?
    };
    let out = out.map(Path::to_path_buf).or_else(|| cfg.output.clone());
    run_checks(&suite, &ids, out.as_deref(), jobs)
}

/// Renders the plot of a bundle or of a staged run directory.
pub fn cmd_plot(dir: &Path, out: Option<&Path>) -> Result<PathBuf> {
    if !dir.is_dir() {
        return Err(LabError::BundleMissing(dir.to_path_buf()));
    }
    bundle::plot_to(dir, out)
}
