use std::fmt::Write as _;
use std::path::PathBuf;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Passed,
    Failed,
    /// The configuration does not resolve the quantity under test.
    Skipped,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Passed => "PASSED",
            Status::Failed => "FAILED",
            Status::Skipped => "SKIPPED",
        }
    }
}

/// How a metric is compared with its threshold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    AtMost,
    AtLeast,
    Above,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Metric {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
    pub bound: Bound,
}

impl Metric {
    pub fn at_most(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self { name: name.into(), value, threshold, bound: Bound::AtMost }
    }

    pub fn at_least(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self { name: name.into(), value, threshold, bound: Bound::AtLeast }
    }

    pub fn above(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self { name: name.into(), value, threshold, bound: Bound::Above }
    }

    /// NaN values never pass.
    pub fn passed(&self) -> bool {
        match self.bound {
            Bound::AtMost => self.value <= self.threshold,
            Bound::AtLeast => self.value >= self.threshold,
            Bound::Above => self.value > self.threshold,
        }
    }

    pub fn relation(&self) -> &'static str {
        match self.bound {
            Bound::AtMost => "<=",
            Bound::AtLeast => ">=",
            Bound::Above => ">",
        }
    }
}

/// Outcome of one verification experiment.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub check_id: String,
    pub status: Status,
    pub metrics: Vec<Metric>,
    pub notes: Vec<String>,
    pub artifacts: Vec<PathBuf>,
    /// Wall-clock seconds.
    pub runtime: f64,
}

impl CheckReport {
    /// Passed exactly when every metric is within its threshold.
    pub fn from_metrics(check_id: &str, metrics: Vec<Metric>) -> Self {
        let status = if metrics.iter().all(Metric::passed) { Status::Passed } else { Status::Failed };
        Self { check_id: check_id.into(), status, metrics, notes: Vec::new(), artifacts: Vec::new(), runtime: 0.0 }
    }

    pub fn skipped(check_id: &str, why: impl Into<String>) -> Self {
        Self {
            check_id: check_id.into(),
            status: Status::Skipped,
            metrics: Vec::new(),
            notes: vec![why.into()],
            artifacts: Vec::new(),
            runtime: 0.0,
        }
    }

    /// A check that could not run to completion.
    pub fn errored(check_id: &str, why: impl Into<String>) -> Self {
        Self { status: Status::Failed, ..Self::skipped(check_id, why) }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Passed
    }

    pub fn metric(&self, name: &str) -> Option<&Metric> {
        self.metrics.iter().find(|m| m.name == name)
    }

    pub fn failed_metrics(&self) -> impl Iterator<Item = &Metric> {
        self.metrics.iter().filter(|m| !m.passed())
    }

    /// The first failing metric, or the first metric when all pass.
    pub fn key_metric(&self) -> Option<&Metric> {
        self.failed_metrics().next().or(self.metrics.first())
    }
}

/// Fixed-width table with one row per report: check, status, key metric, runtime.
pub fn summary_table(reports: &[CheckReport]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<18} {:<8} {:<34} {:>12} {:>14} {:>9}",
        "check", "status", "key metric", "value", "threshold", "time [s]"
    );
    for r in reports {
        let (name, value, threshold) = match r.key_metric() {
            Some(m) => (m.name.clone(), format!("{:.4e}", m.value), format!("{} {:.3e}", m.relation(), m.threshold)),
            None => (r.notes.first().cloned().unwrap_or_default(), String::new(), String::new()),
        };
        let _ = writeln!(
            out,
            "{:<18} {:<8} {:<34} {:>12} {:>14} {:>9.2}",
            r.check_id,
            r.status.label(),
            name,
            value,
            threshold,
            r.runtime
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_follows_the_metrics() {
        let ok = CheckReport::from_metrics("a", vec![Metric::at_most("x", 1.0, 1.0), Metric::above("y", 2.0, 0.0)]);
        assert!(ok.passed());
        let bad = CheckReport::from_metrics("b", vec![Metric::at_most("x", 1.0, 1.0), Metric::at_least("y", 0.5, 1.0)]);
        assert_eq!(bad.status, Status::Failed);
        assert_eq!(bad.key_metric().unwrap().name, "y");
        assert!(!Metric::at_most("nan", f64::NAN, 1.0).passed());
        assert!(!Metric::above("z", 0.0, 0.0).passed());
    }

    #[test]
    fn skipped_and_errored_reports_differ() {
        assert_eq!(CheckReport::skipped("c", "too coarse").status, Status::Skipped);
        assert_eq!(CheckReport::errored("c", "solver failed").status, Status::Failed);
        assert!(CheckReport::from_metrics("empty", Vec::new()).passed());
    }

    #[test]
    fn table_has_a_row_per_report() {
        let reports = vec![
            CheckReport::from_metrics("first", vec![Metric::at_most("defect", 1e-5, 1e-3)]),
            CheckReport::skipped("second", "facet shorter than 8h"),
        ];
        let table = summary_table(&reports);
        let lines: Vec<&str> = table.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("first") && lines[1].contains("PASSED") && lines[1].contains("<= 1.000e-3"));
        assert!(lines[2].contains("SKIPPED") && lines[2].contains("facet shorter"));
    }
}
