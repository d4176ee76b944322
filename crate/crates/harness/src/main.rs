use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use ktdmoea_harness::{
    aggregate, algorithm_ids, fronts, load_records, run_experiment, write_aggregates, write_report, ExperimentConfig,
    Metric, ReportOptions,
};

#[derive(Parser)]
#[command(name = "ktdmoea", version, about = "Dynamic many-objective optimisation experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// TOML experiment config; defaults apply when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory (overrides the config).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; 0 uses every core.
    #[arg(long)]
    workers: Option<usize>,
    /// Base seed; run r uses seed + r.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Execute every run of the grid, resuming completed ones.
    Run(Common),
    /// Summarise completed runs into mean/std tables.
    Aggregate(Common),
    /// Rankings, Wilcoxon grids and tables for completed runs.
    Report {
        #[command(flatten)]
        common: Common,
        /// Comma-separated metrics out of hv, gd, ms.
        #[arg(long, value_delimiter = ',', default_value = "hv,gd,ms")]
        metrics: Vec<String>,
        /// Algorithm the Wilcoxon grids compare against (default: the first).
        #[arg(long)]
        reference: Option<String>,
        /// Also write .dat files for plotting.
        #[arg(long)]
        plot_data: bool,
    },
    /// Sample and cache the true Pareto fronts the grid needs.
    SamplePf(Common),
}

fn load_config(c: &Common) -> anyhow::Result<ExperimentConfig> {
    let mut cfg = match &c.config {
        Some(p) => ExperimentConfig::load(p).with_context(|| format!("loading {}", p.display()))?,
        None => ExperimentConfig::default(),
    };
    if let Some(o) = &c.out {
        cfg.output = o.clone();
    }
    if let Some(w) = c.workers {
        cfg.workers = w;
    }
    if let Some(s) = c.seed {
        cfg.base_seed = s;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Run(c) => {
            let cfg = load_config(&c)?;
            let outcome = run_experiment(&cfg)?;
            println!(
                "{} runs complete ({} executed, {} resumed) in {}",
                outcome.records.len(),
                outcome.executed,
                outcome.resumed,
                cfg.output.display()
            );
        }
        Command::Aggregate(c) => {
            let cfg = load_config(&c)?;
            let tables = aggregate(&load_records(&cfg)?, &algorithm_ids(&cfg)?)?;
            for p in write_aggregates(&tables, &cfg.output)? {
                println!("{}", p.display());
            }
        }
        Command::Report {
            common,
            metrics,
            reference,
            plot_data,
        } => {
            let cfg = load_config(&common)?;
            let metrics = metrics
                .iter()
                .filter(|m| !m.trim().is_empty())
                .map(|m| m.parse::<Metric>())
                .collect::<Result<Vec<_>, _>>()?;
            let opts = ReportOptions {
                metrics,
                reference,
                plot_data,
            };
            if opts.metrics.is_empty() {
                anyhow::bail!("no metrics selected");
            }
            let tables = aggregate(&load_records(&cfg)?, &algorithm_ids(&cfg)?)?;
            write_aggregates(&tables, &cfg.output)?;
            for p in write_report(&tables, &opts, &cfg.output.join("report"))? {
                println!("{}", p.display());
            }
        }
        Command::SamplePf(c) => {
            let cfg = load_config(&c)?;
            let dir = fronts::cache_dir(&cfg.output);
            let needed = ktdmoea_harness::runner::fronts_needed(&cfg)?;
            fronts::FrontSet::prepare(Some(&dir), cfg.pf_points, &needed)?;
            println!("{} fronts cached in {}", needed.len(), dir.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
