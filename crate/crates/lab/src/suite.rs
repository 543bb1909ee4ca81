use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::checks::{run_check, CheckId};
use crate::config::SuiteSpec;
use crate::error::Result;
use crate::report::{summary_table, CheckReport};

/// Runs the selected checks on `jobs` worker threads and returns the reports in the order
/// of `ids`. With an output directory, each check writes its artifacts and `report.json`
/// under `out/<check_id>/` and the summary table goes to `out/summary.txt`.
pub fn run_checks(suite: &SuiteSpec, ids: &[CheckId], out: Option<&Path>, jobs: usize) -> Result<Vec<CheckReport>> {
    suite.validate_thresholds()?;
    let slots: Vec<Mutex<Option<CheckReport>>> = ids.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let worker = || loop {
        let i = next.fetch_add(1, Ordering::Relaxed);
        let Some(&id) = ids.get(i) else { break };
        let dir = out.map(|o| o.join(id.name()));
        let report = run_check(id, suite, dir.as_deref());
        *slots[i].lock().expect("no worker panics while holding a slot") = Some(report);
    };
    let workers = jobs.clamp(1, ids.len().max(1));
    if workers == 1 {
        worker();
    } else {
        std::thread::scope(|s| {
            for _ in 0..workers {
                s.spawn(worker);
            }
        });
    }
    let reports: Vec<CheckReport> =
        slots.into_iter().map(|s| s.into_inner().expect("workers finished").expect("every slot is filled")).collect();
    if let Some(out) = out {
        std::fs::create_dir_all(out)?;
        for r in &reports {
            let dir = out.join(&r.check_id);
            std::fs::create_dir_all(&dir)?;
            std::fs::write(dir.join("report.json"), serde_json::to_string_pretty(r)?)?;
        }
        std::fs::write(out.join("summary.txt"), summary_table(&reports))?;
    }
    Ok(reports)
}

/// Runs every check enabled in the suite.
pub fn run_all(suite: &SuiteSpec, out: Option<&Path>, jobs: usize) -> Result<Vec<CheckReport>> {
    run_checks(suite, &suite.selected()?, out, jobs)
}

/// Exit status of a suite: success when no check failed (skipped checks do not count).
pub fn all_passed(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.status != crate::report::Status::Failed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::ExperimentConfig;
    use crate::error::LabError;

    #[test]
    fn empty_suite_gives_no_reports() {
        let suite = ExperimentConfig::from_toml("[suite]\nchecks = []").unwrap().suite();
        let dir = tempfile::tempdir().unwrap();
        let reports = run_all(&suite, Some(dir.path()), 4).unwrap();
        assert!(reports.is_empty());
        assert!(all_passed(&reports));
        assert_eq!(std::fs::read_to_string(dir.path().join("summary.txt")).unwrap().lines().count(), 1);
    }

    #[test]
    fn unknown_check_is_a_config_error() {
        let suite = ExperimentConfig::from_toml("[suite]\nchecks = [\"straszewicz\", \"nope\"]").unwrap().suite();
        assert!(matches!(run_all(&suite, None, 1), Err(LabError::ConfigInvalid(_))));
    }

    #[test]
    fn reports_keep_declaration_order_across_workers() {
        let suite =
            ExperimentConfig::from_toml("[suite]\nchecks = [\"straszewicz\", \"counterexample\", \"straszewicz\"]")
                .unwrap()
                .suite();
        let reports = run_all(&suite, None, 3).unwrap();
        let ids: Vec<&str> = reports.iter().map(|r| r.check_id.as_str()).collect();
        assert_eq!(ids, ["straszewicz", "counterexample", "straszewicz"]);
        assert!(reports.iter().all(CheckReport::passed), "{}", summary_table(&reports));
    }

    #[test]
    fn impossible_threshold_fails_without_aborting() {
        let text = "[suite]\nchecks = [\"straszewicz\", \"counterexample\"]\n[suite.thresholds]\n\"straszewicz.constant\" = 0.0";
        let suite = ExperimentConfig::from_toml(text).unwrap().suite();
        let reports = run_all(&suite, None, 1).unwrap();
        assert_eq!(reports.len(), 2);
        assert!(!reports[0].passed() && reports[1].passed());
        assert!(!all_passed(&reports));
    }
}
