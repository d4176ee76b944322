//! Acceptance checks. Each test prints one `PASS`/`FAIL` line and then
//! asserts, so `cargo test --test acceptance -- --nocapture` shows a verdict
//! per criterion.

use std::collections::BTreeMap;
use std::fs;

use ktdmoea::metrics::{generational_distance, hypervolume_exact, hypervolume_monte_carlo, maximum_spread, Phase};
use ktdmoea::operators::WeightVectorSet;
use ktdmoea::pareto::{dominates, extreme_points, nondominated_indices, nondominated_sort};
use ktdmoea::problems::{DynamicProblem, ProblemKind, ReferenceFront};
use ktdmoea::stats::{friedman_test, wilcoxon_rank_sum, Direction, ObservationMatrix};
use ktdmoea::transfer::{transfer, TransferConfig, TransferPath};
use ktdmoea::{Individual, RandomSource};
use ktdmoea_harness::store::csv_path;
use ktdmoea_harness::{grid, run_experiment, ExperimentConfig, RunRecord};

fn verdict(criterion: u32, ok: bool, detail: &str) {
    println!("criterion {criterion}: {} {detail}", if ok { "PASS" } else { "FAIL" });
}

fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Desk-scale experiment: N=100, warmup 300, 11 seeds.
fn desk_config(out: &std::path::Path, algorithms: &[&str], problems: &[&str], schedule: &str, tau: usize) -> ExperimentConfig {
    ExperimentConfig {
        algorithms: algorithms.iter().map(|s| s.to_string()).collect(),
        problems: problems.iter().map(|s| s.to_string()).collect(),
        schedules: vec![schedule.to_string()],
        tau: vec![tau],
        runs: 11,
        population_size: 100,
        warmup: 300,
        output: out.to_path_buf(),
        ..ExperimentConfig::default()
    }
}

/// Per-run values keyed by (algorithm, problem).
type PerRun = BTreeMap<(String, String), Vec<f64>>;

fn collect(records: &[RunRecord], value: impl Fn(&RunRecord) -> f64) -> PerRun {
    let mut out = PerRun::new();
    let mut sorted: Vec<&RunRecord> = records.iter().collect();
    sorted.sort_by_key(|r| r.run);
    for r in sorted {
        out.entry((r.algorithm.clone(), r.problem.clone())).or_default().push(value(r));
    }
    out
}

fn first_after_change(r: &RunRecord, metric: fn(&ktdmoea_harness::SnapshotRow) -> f64) -> f64 {
    let row = r
        .snapshots
        .iter()
        .find(|s| s.t == 1 && s.phase == Phase::FirstAfterChange)
        .expect("first snapshot after the change");
    metric(row)
}

/// Last-generation HV of a run: mean over the environments after a change.
fn mean_last_hv(r: &RunRecord) -> f64 {
    let v: Vec<f64> = r
        .snapshots
        .iter()
        .filter(|s| s.t >= 1 && s.phase == Phase::LastBeforeChange)
        .map(|s| s.hv)
        .collect();
    v.iter().sum::<f64>() / v.len() as f64
}

fn key(alg: &str, problem: &str) -> (String, String) {
    (alg.to_string(), problem.to_string())
}

#[test]
fn criterion_1_diversity_after_expansion() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = desk_config(dir.path(), &["ktdmoea", "dtaea"], &["WFG4"], "2-3", 5);
    let records = run_experiment(&cfg).unwrap().records;
    let ms = collect(&records, |r| first_after_change(r, |s| s.ms));
    let kt = median(&ms[&key("ktdmoea", "WFG4")]);
    let dt = median(&ms[&key("dtaea", "WFG4")]);
    let ok = kt > dt;
    verdict(1, ok, &format!("WFG4 2->3 median first-gen MS: KTDMOEA {kt:.4} vs DTAEA {dt:.4}"));
    assert!(ok);
}

#[test]
fn criterion_2_contraction_benefit() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = desk_config(dir.path(), &["ktdmoea", "dtaea"], &["F2"], "3-2", 5);
    let records = run_experiment(&cfg).unwrap().records;
    let gd = collect(&records, |r| first_after_change(r, |s| s.gd));
    let ms = collect(&records, |r| first_after_change(r, |s| s.ms));
    let (kt_gd, dt_gd) = (median(&gd[&key("ktdmoea", "F2")]), median(&gd[&key("dtaea", "F2")]));
    let (kt_ms, dt_ms) = (median(&ms[&key("ktdmoea", "F2")]), median(&ms[&key("dtaea", "F2")]));
    let ok = kt_gd <= dt_gd && kt_ms >= dt_ms;
    verdict(
        2,
        ok,
        &format!("F2 3->2 median first-gen GD {kt_gd:.3e} vs {dt_gd:.3e}, MS {kt_ms:.5} vs {dt_ms:.5} (KTDMOEA vs DTAEA)"),
    );
    assert!(ok);
}

#[test]
fn criterion_3_ablation_direction() {
    let dir = tempfile::tempdir().unwrap();
    let problems = ["F2", "WFG4"];
    let cfg = desk_config(dir.path(), &["ktdmoea", "ktdmoea-v1", "dtaea", "dtaea-v1"], &problems, "2-3-4-3-2", 25);
    let records = run_experiment(&cfg).unwrap().records;
    let hv = collect(&records, mean_last_hv);
    let mut detail = String::new();
    let (mut dtaea_wins, mut ktdmoea_wins) = (0, 0);
    for p in problems {
        let m = |a: &str| median(&hv[&key(a, p)]);
        let (d1, d) = (m("dtaea-v1"), m("dtaea"));
        let (k, k1) = (m("ktdmoea"), m("ktdmoea-v1"));
        dtaea_wins += usize::from(d1 >= d);
        ktdmoea_wins += usize::from(k >= k1);
        detail += &format!("[{p}: DTAEAv1 {d1:.4} vs DTAEA {d:.4}, KTDMOEA {k:.4} vs KTDMOEAv1 {k1:.4}] ");
    }
    let ok = dtaea_wins >= 1 && ktdmoea_wins >= 1;
    verdict(3, ok, &format!("median last-gen HV {detail}"));
    assert!(ok);
}

#[test]
fn criterion_4_theta_insensitivity() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = desk_config(dir.path(), &["ktdmoea-1", "ktdmoea-2", "ktdmoea-4"], &["F2"], "2-3-4-3-2", 25);
    let records = run_experiment(&cfg).unwrap().records;
    let hv = collect(&records, mean_last_hv);
    let thetas = ["ktdmoea-1", "ktdmoea-2", "ktdmoea-4"];
    let mut ok = true;
    let mut detail = String::new();
    for i in 0..3 {
        for j in i + 1..3 {
            let p = wilcoxon_rank_sum(&hv[&key(thetas[i], "F2")], &hv[&key(thetas[j], "F2")], 0.05)
                .unwrap()
                .p_value;
            ok &= p > 0.05;
            detail += &format!("[{} vs {}: p={p:.3}] ", thetas[i], thetas[j]);
        }
    }
    verdict(4, ok, &format!("F2 last-gen HV rank-sum {detail}"));
    assert!(ok);
}

fn evaluated(problem: &DynamicProblem, x: Vec<f64>, t: usize) -> Individual {
    let f = problem.evaluate(&x, t).unwrap();
    Individual::new(x, f, t)
}

#[test]
fn criterion_5_transfer_invariants() {
    let mut rng = RandomSource::new(5);
    let calls = 10_000;
    let mut violations = Vec::new();
    let mut expansions = 0;
    for trial in 0..calls {
        let kind = ProblemKind::ALL[trial % 13];
        // alternate directions so both paths get half the calls
        let grow = trial % 2 == 0;
        let step = 1 + rng.index(2);
        let (m_old, m_new) = if grow {
            let m = 2 + rng.index(6 - step);
            (m, m + step)
        } else {
            let m = 2 + step + rng.index(6 - step);
            (m, m - step)
        };
        let n = 10 + rng.index(21);
        let problem = DynamicProblem::new(kind, vec![m_old, m_new]).unwrap();
        let pop: Vec<Individual> = (0..2 * n).map(|_| evaluated(&problem, problem.random_point(&mut rng), 0)).collect();
        let f: Vec<&[f64]> = pop.iter().map(|p| p.f.as_slice()).collect();
        let mut ps: Vec<Individual> = nondominated_indices(&f).into_iter().map(|i| pop[i].clone()).collect();
        ps.truncate(1 + rng.index(n));
        let cfg = TransferConfig {
            population_size: n,
            ..TransferConfig::default()
        };
        let w = WeightVectorSet::for_population(m_new, n);
        let out = transfer(&ps, &problem, 0, 1, &cfg, &w, &mut rng).unwrap();
        let tag = format!("{kind} {m_old}->{m_new} n={n} |ps|={}", ps.len());
        if out.population.len() != n {
            violations.push(format!("{tag}: size {}", out.population.len()));
        }
        if out.population.iter().any(|p| problem.check_bounds(&p.x).is_err()) {
            violations.push(format!("{tag}: out of bounds"));
        }
        if grow {
            expansions += usize::from(matches!(out.path, TransferPath::Expansion { .. }));
            let f: Vec<&[f64]> = ps.iter().map(|p| p.f.as_slice()).collect();
            for e in extreme_points(&f).unwrap() {
                if !out.population.iter().any(|o| o.x == ps[e].x) {
                    violations.push(format!("{tag}: extreme point lost"));
                }
            }
        } else {
            let re: Vec<Vec<f64>> = ps.iter().map(|p| problem.evaluate(&p.x, 1).unwrap()).collect();
            for i in nondominated_indices(&re) {
                if !out.population.iter().any(|o| o.x == ps[i].x) {
                    violations.push(format!("{tag}: nondominated member lost"));
                }
            }
        }
    }
    let ok = violations.is_empty() && expansions == calls / 2;
    verdict(
        5,
        ok,
        &format!("{calls} transfers, {} violations{}", violations.len(), violations.first().map_or(String::new(), |v| format!(", first: {v}"))),
    );
    assert!(ok);
}

/// Union of boxes `[p, r]` by inclusion-exclusion over every subset.
fn inclusion_exclusion(points: &[Vec<f64>], r: &[f64]) -> f64 {
    let n = points.len();
    let mut total = 0.0;
    for mask in 1u32..(1 << n) {
        let mut corner = vec![f64::NEG_INFINITY; r.len()];
        for (i, p) in points.iter().enumerate() {
            if mask & (1 << i) != 0 {
                for (c, v) in corner.iter_mut().zip(p) {
                    *c = c.max(*v);
                }
            }
        }
        let vol: f64 = corner.iter().zip(r).map(|(c, r)| (r - c).max(0.0)).product();
        let sign = if mask.count_ones() % 2 == 1 { 1.0 } else { -1.0 };
        total += sign * vol;
    }
    total
}

fn random_points(rng: &mut RandomSource, n: usize, m: usize) -> Vec<Vec<f64>> {
    (0..n).map(|_| (0..m).map(|_| rng.unit()).collect()).collect()
}

#[test]
fn criterion_6_metric_oracles() {
    let mut rng = RandomSource::new(6);
    let mut failures = Vec::new();

    let r2 = [1.1, 1.1];
    for case in 0..100 {
        let n = 1 + rng.index(12);
        let pts = random_points(&mut rng, n, 2);
        let (exact, oracle) = (hypervolume_exact(&pts, &r2), inclusion_exclusion(&pts, &r2));
        if (exact - oracle).abs() > 1e-12 {
            failures.push(format!("HV case {case}: {exact} vs {oracle}"));
        }
    }

    let r3 = [1.1, 1.1, 1.1];
    for case in 0..20 {
        // points on the unit simplex face, the shape HV sees in practice
        let n = 5 + rng.index(30);
        let pts: Vec<Vec<f64>> = random_points(&mut rng, n, 3)
            .into_iter()
            .map(|p| {
                let s: f64 = p.iter().sum();
                p.iter().map(|v| v / s).collect()
            })
            .collect();
        let exact = hypervolume_exact(&pts, &r3);
        let mc = hypervolume_monte_carlo(&pts, &r3, 100_000, &mut rng);
        if ((mc - exact) / exact).abs() > 0.02 {
            failures.push(format!("MC HV case {case}: {mc} vs {exact}"));
        }
    }

    for case in 0..100 {
        let m = 2 + rng.index(5);
        let (nf, np) = (1 + rng.index(50), 1 + rng.index(20));
        let front = ReferenceFront::new(random_points(&mut rng, nf, m));
        let pts = random_points(&mut rng, np, m);
        let mut sum = 0.0;
        for p in &pts {
            let mut best = f64::INFINITY;
            for q in &front.points {
                let d2: f64 = p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum();
                best = best.min(d2);
            }
            sum += best;
        }
        let brute = sum.sqrt() / pts.len() as f64;
        let gd = generational_distance(&pts, &front).unwrap();
        if (gd - brute).abs() > 1e-12 {
            failures.push(format!("GD case {case}: {gd} vs {brute}"));
        }
    }

    // front spans [0, 4] x [0, 2]
    let front = ReferenceFront::new(vec![vec![0.0, 2.0], vec![4.0, 0.0]]);
    let ms_cases: [(Vec<Vec<f64>>, f64); 4] = [
        (front.points.clone(), 1.0),
        // half of each range: sqrt((0.25 + 0.25) / 2)
        (vec![vec![1.0, 1.0], vec![3.0, 0.0]], 0.5),
        // a single point covers nothing
        (vec![vec![2.0, 1.0]], 0.0),
        // full first range, nothing of the second: sqrt(1 / 2)
        (vec![vec![0.0, 1.0], vec![4.0, 1.0]], 0.5f64.sqrt()),
    ];
    for (i, (pts, expected)) in ms_cases.iter().enumerate() {
        let ms = maximum_spread(pts, &front).unwrap();
        if ms != *expected {
            failures.push(format!("MS case {i}: {ms} vs {expected}"));
        }
    }

    let ok = failures.is_empty();
    verdict(6, ok, &format!("{} metric failures{}", failures.len(), failures.first().map_or(String::new(), |f| format!(", first: {f}"))));
    assert!(ok);
}

/// Peel fronts by checking every pair among the remaining points.
fn brute_force_fronts(points: &[Vec<f64>]) -> Vec<Vec<usize>> {
    let mut left: Vec<usize> = (0..points.len()).collect();
    let mut fronts = Vec::new();
    while !left.is_empty() {
        let front: Vec<usize> = left
            .iter()
            .copied()
            .filter(|&i| !left.iter().any(|&j| dominates(&points[j], &points[i])))
            .collect();
        left.retain(|i| !front.contains(i));
        fronts.push(front);
    }
    fronts
}

#[derive(serde::Deserialize)]
struct RankSumCase {
    a: Vec<f64>,
    b: Vec<f64>,
    p: f64,
}

#[test]
fn criterion_7_sorting_and_stats_oracles() {
    let mut rng = RandomSource::new(7);
    let mut failures = Vec::new();

    for case in 0..500 {
        let m = 2 + rng.index(6);
        let n = 1 + rng.index(60);
        // coarse grid values force duplicates and ties
        let pts: Vec<Vec<f64>> = (0..n).map(|_| (0..m).map(|_| (rng.unit() * 6.0).floor()).collect()).collect();
        let mut got = nondominated_sort(&pts);
        for f in &mut got {
            f.sort_unstable();
        }
        if got != brute_force_fronts(&pts) {
            failures.push(format!("sort case {case}"));
        }
    }

    // Rows are observations, smaller is better. Ranks per row:
    // [1,2,3,4], [2,1,4,3], [1,3,2,4]; rank sums 4, 6, 9, 11.
    // chi2 = 12 / (3 * 4 * 5) * (16 + 36 + 81 + 121) - 3 * 3 * 5 = 5.8
    let m = ObservationMatrix::new(vec![vec![1.0, 2.0, 3.0, 4.0], vec![2.0, 1.0, 4.0, 3.0], vec![1.0, 3.0, 2.0, 4.0]])
        .unwrap();
    let fr = friedman_test(&m, Direction::SmallerBetter).unwrap();
    if (fr.statistic - 5.8).abs() > 1e-12 {
        failures.push(format!("Friedman statistic {}", fr.statistic));
    }
    let expected_ranks = [4.0 / 3.0, 2.0, 3.0, 11.0 / 3.0];
    if fr.mean_ranks.iter().zip(expected_ranks).any(|(a, b)| (a - b).abs() > 1e-12) {
        failures.push(format!("Friedman mean ranks {:?}", fr.mean_ranks));
    }
    // chi-square survival at 5.8 with 3 degrees of freedom
    if (fr.p_value - 0.1217566197112538).abs() > 1e-9 {
        failures.push(format!("Friedman p {}", fr.p_value));
    }

    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/tests/fixtures/wilcoxon_scipy.json");
    let cases: Vec<RankSumCase> = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(cases.len(), 100);
    for (i, c) in cases.iter().enumerate() {
        let p = wilcoxon_rank_sum(&c.a, &c.b, 0.05).unwrap().p_value;
        if (p - c.p).abs() > 1e-6 {
            failures.push(format!("rank-sum case {i}: {p} vs {}", c.p));
        }
    }

    let ok = failures.is_empty();
    verdict(7, ok, &format!("{} oracle failures{}", failures.len(), failures.first().map_or(String::new(), |f| format!(", first: {f}"))));
    assert!(ok);
}

#[test]
fn criterion_8_determinism() {
    let algorithms = ["ktdmoea", "dtaea", "nsga2", "dnsga2", "moead", "dtaea-v1", "ktdmoea-v1"];
    let make = |out: &std::path::Path| ExperimentConfig {
        algorithms: algorithms.map(String::from).to_vec(),
        problems: vec!["F1".into(), "WFG1".into()],
        schedules: vec!["2-4-3".into()],
        tau: vec![5],
        runs: 2,
        base_seed: 42,
        population_size: 30,
        warmup: 20,
        pf_points: 500,
        hv_samples: 5000,
        output: out.to_path_buf(),
        ..ExperimentConfig::default()
    };
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let (cfg_a, cfg_b) = (make(a.path()), make(b.path()));
    run_experiment(&cfg_a).unwrap();
    run_experiment(&cfg_b).unwrap();
    let keys = grid(&cfg_a).unwrap();
    let differing: Vec<String> = keys
        .iter()
        .filter(|k| fs::read(csv_path(&cfg_a.output, k)).unwrap() != fs::read(csv_path(&cfg_b.output, k)).unwrap())
        .map(|k| format!("{} {} run {}", k.algorithm, k.problem, k.run))
        .collect();
    let ok = differing.is_empty();
    verdict(8, ok, &format!("{} run pairs compared, {} differ", keys.len(), differing.len()));
    assert!(ok, "{differing:?}");
}
