use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use ktdmoea::metrics::Phase;
use ktdmoea::stats::{Direction, ObservationMatrix};

use crate::error::{HarnessError, Result};
use crate::runner::RunRecord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Metric {
    Hv,
    Gd,
    Ms,
}

impl Metric {
    pub const ALL: [Metric; 3] = [Metric::Hv, Metric::Gd, Metric::Ms];

    pub fn as_str(self) -> &'static str {
        match self {
            Metric::Hv => "hv",
            Metric::Gd => "gd",
            Metric::Ms => "ms",
        }
    }

    pub fn direction(self) -> Direction {
        match self {
            Metric::Gd => Direction::SmallerBetter,
            Metric::Hv | Metric::Ms => Direction::LargerBetter,
        }
    }

    fn value(self, row: &crate::runner::SnapshotRow) -> f64 {
        match self {
            Metric::Hv => row.hv,
            Metric::Gd => row.gd,
            Metric::Ms => row.ms,
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Metric {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        Metric::ALL
            .into_iter()
            .find(|m| m.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| HarnessError::Config(format!("unknown metric `{s}`")))
    }
}

/// One observation: a change environment of one problem/schedule/tau.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CellKey {
    pub problem: String,
    pub schedule: String,
    pub tau: usize,
    pub t: usize,
}

/// Per-run values of one metric at one phase, by observation and algorithm.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricTable {
    pub metric: Metric,
    pub phase: Phase,
    pub algorithms: Vec<String>,
    pub cells: Vec<CellKey>,
    /// `samples[cell][algorithm]` holds one value per run.
    pub samples: Vec<Vec<Vec<f64>>>,
}

pub fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Sample standard deviation; zero for fewer than two values.
pub fn std_dev(values: &[f64]) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let mu = mean(values);
    (values.iter().map(|v| (v - mu).powi(2)).sum::<f64>() / (values.len() - 1) as f64).sqrt()
}

impl MetricTable {
    pub fn name(&self) -> String {
        format!("{}_{}", self.metric, self.phase.as_str())
    }

    pub fn means(&self) -> Vec<Vec<f64>> {
        self.samples.iter().map(|row| row.iter().map(|v| mean(v)).collect()).collect()
    }

    pub fn std_devs(&self) -> Vec<Vec<f64>> {
        self.samples.iter().map(|row| row.iter().map(|v| std_dev(v)).collect()).collect()
    }

    /// Observations by algorithms, cells holding run means.
    pub fn observation_matrix(&self) -> Result<ObservationMatrix> {
        Ok(ObservationMatrix::new(self.means())?)
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        write!(out, "problem,schedule,tau,t")?;
        for a in &self.algorithms {
            write!(out, ",{a}_mean,{a}_std")?;
        }
        writeln!(out)?;
        for ((cell, means), stds) in self.cells.iter().zip(self.means()).zip(self.std_devs()) {
            write!(out, "{},{},{},{}", cell.problem, cell.schedule, cell.tau, cell.t)?;
            for (m, s) in means.iter().zip(&stds) {
                write!(out, ",{m},{s}")?;
            }
            writeln!(out)?;
        }
        Ok(())
    }
}

/// Group run records into one table per metric and phase. Observations are
/// the change environments `t >= 1`; the warmup environment is left out. Any
/// observation missing an algorithm is reported rather than imputed.
pub fn aggregate(records: &[RunRecord], algorithms: &[String]) -> Result<Vec<MetricTable>> {
    let mut tables = Vec::new();
    for metric in Metric::ALL {
        for phase in [Phase::FirstAfterChange, Phase::LastBeforeChange] {
            let mut cells: BTreeMap<CellKey, Vec<Vec<f64>>> = BTreeMap::new();
            for rec in records {
                let Some(a) = algorithms.iter().position(|x| *x == rec.algorithm) else {
                    continue;
                };
                for row in rec.snapshots.iter().filter(|r| r.phase == phase && r.t >= 1) {
                    let key = CellKey {
                        problem: rec.problem.clone(),
                        schedule: rec.schedule.clone(),
                        tau: rec.tau,
                        t: row.t,
                    };
                    cells.entry(key).or_insert_with(|| vec![Vec::new(); algorithms.len()])[a]
                        .push(metric.value(row));
                }
            }
            let mut missing = Vec::new();
            for (cell, per_alg) in &cells {
                for (a, values) in per_alg.iter().enumerate() {
                    if values.is_empty() {
                        missing.push(format!(
                            "{} {} tau={} t={} {}",
                            cell.problem, cell.schedule, cell.tau, cell.t, algorithms[a]
                        ));
                    }
                }
            }
            if !missing.is_empty() {
                return Err(HarnessError::Missing(missing));
            }
            let (keys, samples) = cells.into_iter().unzip();
            tables.push(MetricTable {
                metric,
                phase,
                algorithms: algorithms.to_vec(),
                cells: keys,
                samples,
            });
        }
    }
    Ok(tables)
}
