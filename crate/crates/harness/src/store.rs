//! On-disk layout of run results.
//!
//! Each run writes one CSV of metric snapshots, then a JSON sidecar. A run
//! whose sidecar exists is complete and is not executed again.

use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use ktdmoea::metrics::Phase;
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};
use crate::runner::{RunKey, RunRecord, SnapshotRow};

pub const SCHEMA_VERSION: u32 = 1;
pub const CSV_COLUMNS: &str = "algorithm,problem,schedule,tau,run,seed,t,m,phase,generation,hv,gd,ms";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sidecar {
    pub schema: u32,
    pub config_hash: String,
    pub algorithm: String,
    pub problem: String,
    pub schedule: String,
    pub tau: usize,
    pub run: usize,
    pub seed: u64,
    pub snapshots: usize,
    pub wall_time_secs: f64,
}

pub fn run_dir(output: &Path, key: &RunKey) -> PathBuf {
    output
        .join("runs")
        .join(key.algorithm.id())
        .join(key.problem.to_string())
        .join(key.schedule.label())
        .join(format!("tau{}", key.schedule.tau()))
}

pub fn csv_path(output: &Path, key: &RunKey) -> PathBuf {
    run_dir(output, key).join(format!("run{:03}.csv", key.run))
}

pub fn sidecar_path(output: &Path, key: &RunKey) -> PathBuf {
    run_dir(output, key).join(format!("run{:03}.json", key.run))
}

pub fn write_csv<W: Write>(record: &RunRecord, config_hash: &str, mut out: W) -> std::io::Result<()> {
    writeln!(out, "# schema={SCHEMA_VERSION} config_hash={config_hash}")?;
    writeln!(out, "{CSV_COLUMNS}")?;
    for s in &record.snapshots {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            record.algorithm,
            record.problem,
            record.schedule,
            record.tau,
            record.run,
            record.seed,
            s.t,
            s.m,
            s.phase.as_str(),
            s.generation,
            s.hv,
            s.gd,
            s.ms
        )?;
    }
    Ok(())
}

/// Parse a run CSV, returning the config hash from its header and the record.
pub fn read_csv(path: &Path) -> Result<(String, RunRecord)> {
    let file = fs::File::open(path).map_err(|e| HarnessError::io(path, e))?;
    let parse_err = |line: usize, message: String| HarnessError::Parse {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut lines = BufReader::new(file).lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| parse_err(1, "empty file".into()))?;
    let header = header.map_err(|e| HarnessError::io(path, e))?;
    let mut hash = None;
    for field in header.trim_start_matches('#').split_whitespace() {
        match field.split_once('=') {
            Some(("schema", v)) if v != SCHEMA_VERSION.to_string() => {
                return Err(parse_err(1, format!("unsupported schema {v}")));
            }
            Some(("config_hash", v)) => hash = Some(v.to_string()),
            _ => {}
        }
    }
    let hash = hash.ok_or_else(|| parse_err(1, "missing config_hash".into()))?;
    match lines.next() {
        Some((_, Ok(cols))) if cols == CSV_COLUMNS => {}
        _ => return Err(parse_err(2, "unexpected column header".into())),
    }
    let mut record: Option<RunRecord> = None;
    for (i, line) in lines {
        let line = line.map_err(|e| HarnessError::io(path, e))?;
        if line.is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 13 {
            return Err(parse_err(i + 1, format!("expected 13 fields, got {}", f.len())));
        }
        let bad = |what: &str| parse_err(i + 1, format!("bad {what}"));
        let num = |s: &str, what: &str| s.parse::<usize>().map_err(|_| bad(what));
        let real = |s: &str, what: &str| s.parse::<f64>().map_err(|_| bad(what));
        let rec = record.get_or_insert_with(|| RunRecord {
            algorithm: f[0].to_string(),
            problem: f[1].to_string(),
            schedule: f[2].to_string(),
            tau: 0,
            run: 0,
            seed: 0,
            snapshots: Vec::new(),
            wall_time_secs: None,
        });
        rec.tau = num(f[3], "tau")?;
        rec.run = num(f[4], "run")?;
        rec.seed = f[5].parse().map_err(|_| bad("seed"))?;
        rec.snapshots.push(SnapshotRow {
            t: num(f[6], "t")?,
            m: num(f[7], "m")?,
            phase: f[8].parse::<Phase>().map_err(|_| bad("phase"))?,
            generation: num(f[9], "generation")?,
            hv: real(f[10], "hv")?,
            gd: real(f[11], "gd")?,
            ms: real(f[12], "ms")?,
        });
    }
    let record = record.ok_or_else(|| parse_err(3, "no snapshot rows".into()))?;
    Ok((hash, record))
}

fn write_atomically(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
    }
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, bytes).map_err(|e| HarnessError::io(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| HarnessError::io(path, e))
}

/// Write the CSV and then the sidecar that marks the run complete.
pub fn persist(output: &Path, key: &RunKey, record: &RunRecord, config_hash: &str) -> Result<()> {
    let mut buf = Vec::new();
    write_csv(record, config_hash, &mut buf).expect("writing to memory");
    write_atomically(&csv_path(output, key), &buf)?;
    let sidecar = Sidecar {
        schema: SCHEMA_VERSION,
        config_hash: config_hash.to_string(),
        algorithm: record.algorithm.clone(),
        problem: record.problem.clone(),
        schedule: record.schedule.clone(),
        tau: record.tau,
        run: record.run,
        seed: record.seed,
        snapshots: record.snapshots.len(),
        wall_time_secs: record.wall_time_secs.unwrap_or(0.0),
    };
    let json = serde_json::to_vec_pretty(&sidecar).expect("sidecar serializes");
    write_atomically(&sidecar_path(output, key), &json)
}

/// A finished run from an earlier invocation with the same config, if any.
pub fn load_completed(output: &Path, key: &RunKey, config_hash: &str) -> Result<Option<RunRecord>> {
    let side = sidecar_path(output, key);
    if !side.exists() {
        return Ok(None);
    }
    let text = fs::read_to_string(&side).map_err(|e| HarnessError::io(&side, e))?;
    let sidecar: Sidecar = serde_json::from_str(&text).map_err(|e| HarnessError::Parse {
        path: side.clone(),
        line: e.line(),
        message: e.to_string(),
    })?;
    if sidecar.config_hash != config_hash {
        return Ok(None);
    }
    let (hash, mut record) = read_csv(&csv_path(output, key))?;
    if hash != config_hash || record.snapshots.len() != sidecar.snapshots {
        return Ok(None);
    }
    record.wall_time_secs = Some(sidecar.wall_time_secs);
    Ok(Some(record))
}
