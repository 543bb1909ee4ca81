//! Verification harness for `bernoulli-core`: configuration files, CSV and SVG output,
//! solution bundles, the lemma checks and the command implementations behind the
//! `bernoulli` binary.

// NaN-rejecting comparisons such as `!(x > 0.0)` are intentional.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bundle;
pub mod checks;
pub mod commands;
pub mod config;
mod error;
pub mod io;
pub mod report;
pub mod suite;
pub mod svg;

pub use checks::{CheckContext, CheckId};
pub use config::{ExperimentConfig, SuiteSpec};
pub use error::{LabError, Result};
pub use report::{CheckReport, Metric, Status};
pub use suite::{run_all, run_checks};
