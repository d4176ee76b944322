use std::path::Path;
use std::time::Instant;

use ktdmoea::algorithms::{build, step, StepEvent};
use ktdmoea::metrics::{generational_distance, maximum_spread, normalized_hypervolume, Phase};
use ktdmoea::pareto::nondominated_indices;
use ktdmoea::problems::{ChangeSchedule, DynamicProblem, ProblemKind, ReferenceFront};
use ktdmoea::random::mix_seed;
use ktdmoea::Individual;
use rayon::prelude::*;

use crate::config::{AlgorithmSpec, ExperimentConfig};
use crate::error::{HarnessError, Result};
use crate::fronts::{cache_dir, FrontSet};
use crate::store;

/// One cell of the experiment grid.
#[derive(Debug, Clone, PartialEq)]
pub struct RunKey {
    pub algorithm: AlgorithmSpec,
    pub problem: ProblemKind,
    pub schedule: ChangeSchedule,
    pub run: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SnapshotRow {
    pub t: usize,
    pub m: usize,
    pub phase: Phase,
    pub generation: usize,
    pub hv: f64,
    pub gd: f64,
    pub ms: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub algorithm: String,
    pub problem: String,
    pub schedule: String,
    pub tau: usize,
    pub run: usize,
    pub seed: u64,
    pub snapshots: Vec<SnapshotRow>,
    /// Not part of the CSV, so reruns stay byte-identical.
    pub wall_time_secs: Option<f64>,
}

/// Every (algorithm, problem, schedule, tau, run) tuple, in a fixed order.
pub fn grid(cfg: &ExperimentConfig) -> Result<Vec<RunKey>> {
    let mut keys = Vec::new();
    for algorithm in cfg.algorithm_specs()? {
        for problem in cfg.problem_kinds()? {
            for schedule in cfg.schedule_grid()? {
                for run in 0..cfg.runs {
                    keys.push(RunKey {
                        algorithm: algorithm.clone(),
                        problem,
                        schedule: schedule.clone(),
                        run,
                    });
                }
            }
        }
    }
    Ok(keys)
}

/// (problem, objective count) pairs whose fronts the grid needs.
pub fn fronts_needed(cfg: &ExperimentConfig) -> Result<Vec<(ProblemKind, usize)>> {
    let mut out = Vec::new();
    for problem in cfg.problem_kinds()? {
        for schedule in cfg.schedule_grid()? {
            for &m in schedule.segments() {
                if !out.contains(&(problem, m)) {
                    out.push((problem, m));
                }
            }
        }
    }
    Ok(out)
}

/// HV, GD and MS of the nondominated members of `pop`.
pub fn measure(pop: &[Individual], front: &ReferenceFront, hv_samples: usize, hv_seed: u64) -> Result<(f64, f64, f64)> {
    let f: Vec<&[f64]> = pop.iter().map(|p| p.f.as_slice()).collect();
    let nd: Vec<&[f64]> = nondominated_indices(&f).into_iter().map(|i| f[i]).collect();
    let hv = normalized_hypervolume(&nd, front, hv_samples, hv_seed);
    let gd = generational_distance(&nd, front)?;
    let ms = maximum_spread(&nd, front)?;
    Ok((hv, gd, ms))
}

/// Seed for the Monte Carlo HV of one snapshot.
pub fn snapshot_seed(run_seed: u64, t: usize, phase: Phase) -> u64 {
    let phase_bit = match phase {
        Phase::FirstAfterChange => 0,
        Phase::LastBeforeChange => 1,
    };
    mix_seed(mix_seed(run_seed) ^ ((t as u64) << 1 | phase_bit))
}

/// Execute one run and collect its snapshots: the last generation of every
/// environment, and the first generation after each change, taken right
/// after the change response.
pub fn execute_run(cfg: &ExperimentConfig, key: &RunKey, fronts: &FrontSet) -> Result<RunRecord> {
    let started = Instant::now();
    let seed = cfg.base_seed + key.run as u64;
    let schedule = &key.schedule;
    let problem = DynamicProblem::for_schedule(key.problem, schedule)?;
    let mut opt = build(key.algorithm.kind, &cfg.optimizer_config(&key.algorithm), &problem, seed)?;
    let mut snapshots = Vec::with_capacity(2 * schedule.num_changes() + 1);
    for g in 0..schedule.total_generations() {
        let event = step(opt.as_mut(), &problem, schedule, g)?;
        let t = opt.environment();
        let mut phases = Vec::new();
        if matches!(event, StepEvent::Changed { .. }) {
            phases.push(Phase::FirstAfterChange);
        }
        if g == schedule.end_of(t) {
            phases.push(Phase::LastBeforeChange);
        }
        for phase in phases {
            let m = problem.objectives_at(t)?;
            let front = fronts
                .get(key.problem, m)
                .ok_or_else(|| HarnessError::Config(format!("no reference front for {} with {m} objectives", key.problem)))?;
            let (hv, gd, ms) = measure(opt.population(), front, cfg.hv_samples, snapshot_seed(seed, t, phase))?;
            snapshots.push(SnapshotRow {
                t,
                m,
                phase,
                generation: g,
                hv,
                gd,
                ms,
            });
        }
    }
    Ok(RunRecord {
        algorithm: key.algorithm.id(),
        problem: key.problem.to_string(),
        schedule: schedule.label(),
        tau: schedule.tau(),
        run: key.run,
        seed,
        snapshots,
        wall_time_secs: Some(started.elapsed().as_secs_f64()),
    })
}

#[derive(Debug, Clone)]
pub struct ExperimentOutcome {
    pub records: Vec<RunRecord>,
    pub executed: usize,
    pub resumed: usize,
}

/// Run the whole grid on a worker pool, persisting each run as it finishes
/// and skipping runs already completed under the same config.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutcome> {
    cfg.validate()?;
    let output = cfg.output.as_path();
    let hash = cfg.hash();
    let keys = grid(cfg)?;
    let cache = cache_dir(output);
    let fronts = FrontSet::prepare(Some(&cache), cfg.pf_points, &fronts_needed(cfg)?)?;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| HarnessError::Config(format!("worker pool: {e}")))?;
    let results: Vec<Result<(RunRecord, bool)>> = pool.install(|| {
        keys.par_iter()
            .map(|key| run_or_resume(cfg, key, &fronts, output, &hash))
            .collect()
    });
    let mut records = Vec::with_capacity(results.len());
    let mut executed = 0;
    for r in results {
        let (record, fresh) = r?;
        executed += usize::from(fresh);
        records.push(record);
    }
    let resumed = records.len() - executed;
    Ok(ExperimentOutcome {
        records,
        executed,
        resumed,
    })
}

fn run_or_resume(
    cfg: &ExperimentConfig,
    key: &RunKey,
    fronts: &FrontSet,
    output: &Path,
    hash: &str,
) -> Result<(RunRecord, bool)> {
    if let Some(done) = store::load_completed(output, key, hash)? {
        return Ok((done, false));
    }
    let record = execute_run(cfg, key, fronts)?;
    store::persist(output, key, &record, hash)?;
    log::info!(
        "{} {} {} tau={} run={} done in {:.1}s",
        record.algorithm,
        record.problem,
        record.schedule,
        record.tau,
        record.run,
        record.wall_time_secs.unwrap_or(0.0)
    );
    Ok((record, true))
}

/// Load every run of the grid from disk. Runs missing or written under a
/// different config are reported together.
pub fn load_records(cfg: &ExperimentConfig) -> Result<Vec<RunRecord>> {
    let hash = cfg.hash();
    let mut records = Vec::new();
    let mut missing = Vec::new();
    for key in grid(cfg)? {
        match store::load_completed(&cfg.output, &key, &hash)? {
            Some(r) => records.push(r),
            None => missing.push(store::csv_path(&cfg.output, &key).display().to_string()),
        }
    }
    if !missing.is_empty() {
        return Err(HarnessError::Missing(missing));
    }
    Ok(records)
}
