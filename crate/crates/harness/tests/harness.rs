use std::fs;
use std::path::{Path, PathBuf};

use ktdmoea::metrics::Phase;
use ktdmoea_harness::aggregate::{mean, std_dev};
use ktdmoea_harness::store::{self, csv_path};
use ktdmoea_harness::{
    aggregate, algorithm_ids, grid, run_experiment, write_report, ExperimentConfig, HarnessError, Metric,
    ReportOptions, RunRecord, SnapshotRow,
};

fn small_config(out: &Path) -> ExperimentConfig {
    ExperimentConfig {
        algorithms: vec!["ktdmoea".into(), "dtaea".into()],
        problems: vec!["F2".into()],
        schedules: vec!["2-3-2".into()],
        tau: vec![5],
        runs: 2,
        population_size: 24,
        warmup: 10,
        pf_points: 300,
        hv_samples: 1000,
        output: out.to_path_buf(),
        workers: 2,
        ..ExperimentConfig::default()
    }
}

fn csv_bytes(cfg: &ExperimentConfig) -> Vec<(PathBuf, Vec<u8>)> {
    grid(cfg)
        .unwrap()
        .iter()
        .map(|k| {
            let rel = csv_path(Path::new(""), k);
            let bytes = fs::read(csv_path(&cfg.output, k)).unwrap();
            (rel, bytes)
        })
        .collect()
}

#[test]
fn snapshots_cover_every_environment_and_change() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_config(dir.path());
    let outcome = run_experiment(&cfg).unwrap();
    assert_eq!(outcome.records.len(), 4);
    for rec in &outcome.records {
        // two changes: last of t=0, then first and last of t=1 and t=2
        let seen: Vec<(usize, usize, Phase)> = rec.snapshots.iter().map(|s| (s.t, s.m, s.phase)).collect();
        assert_eq!(
            seen,
            vec![
                (0, 2, Phase::LastBeforeChange),
                (1, 3, Phase::FirstAfterChange),
                (1, 3, Phase::LastBeforeChange),
                (2, 2, Phase::FirstAfterChange),
                (2, 2, Phase::LastBeforeChange),
            ]
        );
        let gens: Vec<usize> = rec.snapshots.iter().map(|s| s.generation).collect();
        assert_eq!(gens, vec![9, 10, 14, 15, 19]);
        for s in &rec.snapshots {
            assert!(s.hv >= 0.0 && s.gd >= 0.0 && (0.0..=1.0).contains(&s.ms), "{s:?}");
        }
    }
}

#[test]
fn run_seeds_follow_base_seed() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = ExperimentConfig {
        algorithms: vec!["nsga2".into()],
        runs: 5,
        base_seed: 7,
        ..small_config(dir.path())
    };
    let mut seeds: Vec<u64> = run_experiment(&cfg).unwrap().records.iter().map(|r| r.seed).collect();
    seeds.sort_unstable();
    assert_eq!(seeds, vec![7, 8, 9, 10, 11]);
}

#[test]
fn reruns_and_worker_counts_give_identical_bytes() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let c = tempfile::tempdir().unwrap();
    let cfg_a = ExperimentConfig { workers: 1, ..small_config(a.path()) };
    let cfg_b = ExperimentConfig { workers: 1, ..small_config(b.path()) };
    let cfg_c = ExperimentConfig { workers: 4, ..small_config(c.path()) };
    for cfg in [&cfg_a, &cfg_b, &cfg_c] {
        run_experiment(cfg).unwrap();
    }
    let bytes_a = csv_bytes(&cfg_a);
    assert_eq!(bytes_a, csv_bytes(&cfg_b));
    assert_eq!(bytes_a, csv_bytes(&cfg_c));
}

#[test]
fn completed_runs_are_resumed() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_config(dir.path());
    let first = run_experiment(&cfg).unwrap();
    assert_eq!((first.executed, first.resumed), (4, 0));
    let before = csv_bytes(&cfg);

    let again = run_experiment(&cfg).unwrap();
    assert_eq!((again.executed, again.resumed), (0, 4));

    let key = &grid(&cfg).unwrap()[1];
    fs::remove_file(store::sidecar_path(&cfg.output, key)).unwrap();
    let partial = run_experiment(&cfg).unwrap();
    assert_eq!((partial.executed, partial.resumed), (1, 3));
    assert_eq!(before, csv_bytes(&cfg));

    // a changed config must not reuse old results
    let changed = ExperimentConfig { hv_samples: 999, ..cfg };
    let fresh = run_experiment(&changed).unwrap();
    assert_eq!((fresh.executed, fresh.resumed), (4, 0));
}

#[test]
fn csv_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_config(dir.path());
    let outcome = run_experiment(&cfg).unwrap();
    let hash = cfg.hash();
    for key in grid(&cfg).unwrap() {
        let (h, mut rec) = store::read_csv(&csv_path(&cfg.output, &key)).unwrap();
        assert_eq!(h, hash);
        let orig = outcome
            .records
            .iter()
            .find(|r| r.algorithm == key.algorithm.id() && r.run == key.run)
            .unwrap();
        rec.wall_time_secs = orig.wall_time_secs;
        assert_eq!(&rec, orig);
    }
}

fn record(alg: &str, run: usize, values: [f64; 2]) -> RunRecord {
    let row = |t: usize, phase: Phase, v: f64| SnapshotRow {
        t,
        m: 3,
        phase,
        generation: 0,
        hv: v,
        gd: 10.0 * v,
        ms: v / 10.0,
    };
    RunRecord {
        algorithm: alg.into(),
        problem: "F1".into(),
        schedule: "2-3-2".into(),
        tau: 5,
        run,
        seed: run as u64,
        snapshots: vec![
            row(0, Phase::LastBeforeChange, 100.0),
            row(1, Phase::FirstAfterChange, values[0]),
            row(1, Phase::LastBeforeChange, values[1]),
        ],
        wall_time_secs: None,
    }
}

#[test]
fn aggregation_matches_hand_computation() {
    let algs = vec!["a".to_string(), "b".to_string()];
    let recs = vec![
        record("a", 0, [1.0, 5.0]),
        record("a", 1, [2.0, 5.0]),
        record("a", 2, [4.0, 5.0]),
        record("b", 0, [3.0, 0.0]),
        record("b", 1, [3.0, 1.0]),
        record("b", 2, [3.0, 2.0]),
    ];
    let tables = aggregate(&recs, &algs).unwrap();
    assert_eq!(tables.len(), 6);
    let hv_first = tables
        .iter()
        .find(|t| t.metric == Metric::Hv && t.phase == Phase::FirstAfterChange)
        .unwrap();
    // warmup environment t=0 is excluded
    assert_eq!(hv_first.cells.len(), 1);
    assert_eq!(hv_first.cells[0].t, 1);
    let means = hv_first.means();
    let stds = hv_first.std_devs();
    assert!((means[0][0] - 7.0 / 3.0).abs() < 1e-12);
    assert!((stds[0][0] - (7.0f64 / 3.0).sqrt()).abs() < 1e-12);
    assert_eq!((means[0][1], stds[0][1]), (3.0, 0.0));

    let gd_last = tables
        .iter()
        .find(|t| t.metric == Metric::Gd && t.phase == Phase::LastBeforeChange)
        .unwrap();
    assert_eq!(gd_last.samples[0][1], vec![0.0, 10.0, 20.0]);
    assert!((gd_last.std_devs()[0][1] - 10.0).abs() < 1e-12);

    assert_eq!(mean(&[2.0]), 2.0);
    assert_eq!(std_dev(&[2.0]), 0.0);
}

#[test]
fn missing_algorithm_is_reported() {
    let algs = vec!["a".to_string(), "b".to_string()];
    let recs = vec![record("a", 0, [1.0, 2.0])];
    match aggregate(&recs, &algs) {
        Err(HarnessError::Missing(cells)) => assert!(cells.iter().all(|c| c.ends_with(" b"))),
        other => panic!("expected a missing-cell error, got {other:?}"),
    }
}

#[test]
fn report_writes_one_ranking_per_metric_and_phase() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = ExperimentConfig {
        algorithms: ["ktdmoea", "dtaea", "nsga2", "dnsga2", "moead", "ktdmoea-4"].map(String::from).to_vec(),
        problems: vec!["F1".into(), "F2".into()],
        runs: 2,
        population_size: 20,
        ..small_config(dir.path())
    };
    let outcome = run_experiment(&cfg).unwrap();
    let tables = aggregate(&outcome.records, &algorithm_ids(&cfg).unwrap()).unwrap();
    let report_dir = dir.path().join("report");
    let written = write_report(&tables, &ReportOptions::default(), &report_dir).unwrap();
    let count = |prefix: &str| {
        written
            .iter()
            .filter(|p| p.file_name().unwrap().to_str().unwrap().starts_with(prefix))
            .count()
    };
    assert_eq!(count("ranking_"), 6);
    assert_eq!(count("wilcoxon_"), 6);
    assert_eq!(count("table_"), 6);
    assert!(report_dir.join("summary.txt").exists());
    let ranking = fs::read_to_string(report_dir.join("ranking_hv_last.csv")).unwrap();
    // header comment, column row, six algorithms
    assert_eq!(ranking.lines().count(), 8);

    let none = ReportOptions { metrics: vec![], ..ReportOptions::default() };
    assert!(matches!(write_report(&tables, &none, &report_dir), Err(HarnessError::Report(_))));
}
