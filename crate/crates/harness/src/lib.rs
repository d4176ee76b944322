//! Experiment driver: runs the algorithm grid over dynamic problems,
//! persists per-run metric snapshots and turns them into statistical reports.

pub mod aggregate;
pub mod config;
pub mod error;
pub mod fronts;
pub mod report;
pub mod runner;
pub mod store;

pub use aggregate::{aggregate, Metric, MetricTable};
pub use config::{AlgorithmSpec, ExperimentConfig};
pub use error::{HarnessError, Result};
pub use report::{write_report, ReportOptions};
pub use runner::{execute_run, grid, load_records, run_experiment, RunKey, RunRecord, SnapshotRow};

use std::fs;
use std::path::{Path, PathBuf};

/// Algorithm ids in config order, as they appear in run records.
pub fn algorithm_ids(cfg: &ExperimentConfig) -> Result<Vec<String>> {
    Ok(cfg.algorithm_specs()?.iter().map(AlgorithmSpec::id).collect())
}

/// Write one mean/std table per metric and phase under `<output>/aggregate`.
pub fn write_aggregates(tables: &[MetricTable], output: &Path) -> Result<Vec<PathBuf>> {
    let dir = output.join("aggregate");
    fs::create_dir_all(&dir).map_err(|e| HarnessError::io(&dir, e))?;
    let mut written = Vec::new();
    for table in tables {
        let path = dir.join(format!("{}.csv", table.name()));
        let mut buf = Vec::new();
        table.write_csv(&mut buf).map_err(|e| HarnessError::io(&path, e))?;
        fs::write(&path, buf).map_err(|e| HarnessError::io(&path, e))?;
        written.push(path);
    }
    Ok(written)
}
