use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use ktdmoea::stats::{friedman_test, nemenyi_cd, wilcoxon_rank_sum, Direction, FriedmanResult};

use crate::aggregate::{mean, Metric, MetricTable};
use crate::error::{HarnessError, Result};

pub const ALPHA: f64 = 0.05;

#[derive(Debug, Clone, PartialEq)]
pub struct ReportOptions {
    pub metrics: Vec<Metric>,
    /// Algorithm the Wilcoxon grids compare every other one against;
    /// defaults to the first.
    pub reference: Option<String>,
    /// Also write whitespace-separated ranking files for plotting.
    pub plot_data: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self {
            metrics: Metric::ALL.to_vec(),
            reference: None,
            plot_data: false,
        }
    }
}

/// `+` when `a` is significantly better than `b`, `-` when significantly
/// worse, `=` otherwise.
pub fn verdict(a: &[f64], b: &[f64], direction: Direction) -> Result<(f64, char)> {
    let test = wilcoxon_rank_sum(a, b, ALPHA)?;
    if !test.significant {
        return Ok((test.p_value, '='));
    }
    let a_better = match direction {
        Direction::LargerBetter => mean(a) > mean(b),
        Direction::SmallerBetter => mean(a) < mean(b),
    };
    Ok((test.p_value, if a_better { '+' } else { '-' }))
}

fn write_file(path: PathBuf, text: &str, written: &mut Vec<PathBuf>) -> Result<()> {
    fs::write(&path, text).map_err(|e| HarnessError::io(&path, e))?;
    written.push(path);
    Ok(())
}

/// Write ranking, Wilcoxon and mean/std tables for the selected metrics plus
/// a plain-text summary. Returns the files written.
pub fn write_report(tables: &[MetricTable], opts: &ReportOptions, dir: &Path) -> Result<Vec<PathBuf>> {
    if opts.metrics.is_empty() {
        return Err(HarnessError::Report("no metrics selected".into()));
    }
    let selected: Vec<&MetricTable> = tables.iter().filter(|t| opts.metrics.contains(&t.metric)).collect();
    if selected.is_empty() {
        return Err(HarnessError::Report("no results for the selected metrics".into()));
    }
    fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
    let mut written = Vec::new();
    let mut summary = String::new();

    for table in selected {
        let name = table.name();
        let k = table.algorithms.len();
        let n = table.cells.len();
        let direction = table.metric.direction();
        let _ = writeln!(summary, "== {} ({n} observations, {k} algorithms)", name.to_uppercase());

        let friedman: Option<FriedmanResult> = if k >= 2 && n >= 2 {
            Some(friedman_test(&table.observation_matrix()?, direction)?)
        } else {
            None
        };
        if let Some(fr) = &friedman {
            let cd = nemenyi_cd(k, n, ALPHA).ok();
            let cd_text = cd.map_or("n/a".to_string(), |c| format!("{c}"));
            let mut order: Vec<usize> = (0..k).collect();
            order.sort_by(|&a, &b| fr.mean_ranks[a].total_cmp(&fr.mean_ranks[b]));
            let mut csv = format!(
                "# friedman_statistic={} p_value={} nemenyi_cd={cd_text} observations={n}\nposition,algorithm,mean_rank,score\n",
                fr.statistic, fr.p_value
            );
            let mut dat = String::from("# position mean_rank algorithm\n");
            for (pos, &a) in order.iter().enumerate() {
                // score: larger is better, k for a clean sweep
                let score = (k + 1) as f64 - fr.mean_ranks[a];
                let _ = writeln!(csv, "{},{},{},{}", pos + 1, table.algorithms[a], fr.mean_ranks[a], score);
                let _ = writeln!(dat, "{} {} {}", pos + 1, fr.mean_ranks[a], table.algorithms[a]);
            }
            write_file(dir.join(format!("ranking_{name}.csv")), &csv, &mut written)?;
            if opts.plot_data {
                write_file(dir.join(format!("ranking_{name}.dat")), &dat, &mut written)?;
            }
            let _ = writeln!(
                summary,
                "Friedman chi2 = {:.4}, p = {:.3e}, Nemenyi CD = {cd_text}",
                fr.statistic, fr.p_value
            );
            for (pos, &a) in order.iter().enumerate() {
                let gap = fr.mean_ranks[a] - fr.mean_ranks[order[0]];
                let differs = cd.is_some_and(|c| gap > c);
                let _ = writeln!(
                    summary,
                    "  {:>2}. {:<14} mean rank {:.3}{}",
                    pos + 1,
                    table.algorithms[a],
                    fr.mean_ranks[a],
                    if differs { "  (differs from best)" } else { "" }
                );
            }
        } else {
            let _ = writeln!(summary, "Friedman test skipped: needs 2+ algorithms and 2+ observations");
        }

        let reference = opts.reference.clone().unwrap_or_else(|| table.algorithms[0].clone());
        let r = table
            .algorithms
            .iter()
            .position(|a| *a == reference)
            .ok_or_else(|| HarnessError::Report(format!("reference algorithm `{reference}` not in results")))?;
        let mut csv = String::from("problem,schedule,tau,t,reference,other,p_value,verdict\n");
        let mut counts = vec![[0usize; 3]; k];
        for (cell, row) in table.cells.iter().zip(&table.samples) {
            for o in (0..k).filter(|&o| o != r) {
                let (p, v) = verdict(&row[r], &row[o], direction)?;
                let slot = match v {
                    '+' => 0,
                    '=' => 1,
                    _ => 2,
                };
                counts[o][slot] += 1;
                let _ = writeln!(
                    csv,
                    "{},{},{},{},{},{},{p},{v}",
                    cell.problem, cell.schedule, cell.tau, cell.t, reference, table.algorithms[o]
                );
            }
        }
        write_file(dir.join(format!("wilcoxon_{name}.csv")), &csv, &mut written)?;
        for o in (0..k).filter(|&o| o != r) {
            let [better, same, worse] = counts[o];
            let _ = writeln!(
                summary,
                "  {reference} vs {:<14} +{better} ={same} -{worse}",
                table.algorithms[o]
            );
        }

        let mut csv = String::from("problem,schedule,tau,t");
        for a in &table.algorithms {
            let _ = write!(csv, ",{a}");
        }
        csv.push('\n');
        for ((cell, means), stds) in table.cells.iter().zip(table.means()).zip(table.std_devs()) {
            let _ = write!(csv, "{},{},{},{}", cell.problem, cell.schedule, cell.tau, cell.t);
            for (m, s) in means.iter().zip(&stds) {
                let _ = write!(csv, ",{m:.4e}({s:.2e})");
            }
            csv.push('\n');
        }
        write_file(dir.join(format!("table_{name}.csv")), &csv, &mut written)?;
        summary.push('\n');
    }
    write_file(dir.join("summary.txt"), &summary, &mut written)?;
    Ok(written)
}
