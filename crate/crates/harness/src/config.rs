use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use ktdmoea::algorithms::{AlgorithmKind, OptimizerConfig};
use ktdmoea::operators::VariationConfig;
use ktdmoea::problems::{ChangeSchedule, ObjectiveSequence, ProblemKind};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{HarnessError, Result};

/// An algorithm as named in a config: a kind plus an optional θ override,
/// written `ktdmoea-4` for KTDMOEA with θ = 4.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgorithmSpec {
    pub kind: AlgorithmKind,
    pub theta: Option<usize>,
}

impl AlgorithmSpec {
    pub fn id(&self) -> String {
        match self.theta {
            Some(theta) => format!("{}-{theta}", self.kind),
            None => self.kind.to_string(),
        }
    }
}

impl fmt::Display for AlgorithmSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

impl FromStr for AlgorithmSpec {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        if let Ok(kind) = s.parse::<AlgorithmKind>() {
            return Ok(Self { kind, theta: None });
        }
        if let Some((head, tail)) = s.rsplit_once('-') {
            if let (Ok(kind), Ok(theta)) = (head.parse::<AlgorithmKind>(), tail.parse::<usize>()) {
                if theta == 0 {
                    return Err(HarnessError::Config(format!("`{s}`: theta must be positive")));
                }
                if matches!(kind, AlgorithmKind::Ktdmoea | AlgorithmKind::DtaeaV1) {
                    return Ok(Self { kind, theta: Some(theta) });
                }
            }
        }
        Err(HarnessError::Config(format!("unknown algorithm `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VariationSection {
    pub crossover_probability: f64,
    pub crossover_eta: f64,
    /// Per-variable mutation probability; 1/n when absent.
    pub mutation_probability: Option<f64>,
    pub mutation_eta: f64,
}

impl Default for VariationSection {
    fn default() -> Self {
        let v = VariationConfig::default();
        Self {
            crossover_probability: v.crossover_probability,
            crossover_eta: v.crossover_eta,
            mutation_probability: v.mutation_probability,
            mutation_eta: v.mutation_eta,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MoeadSection {
    pub neighbourhood: usize,
    pub max_replacements: usize,
    pub delta: f64,
}

impl Default for MoeadSection {
    fn default() -> Self {
        Self {
            neighbourhood: 20,
            max_replacements: 2,
            delta: 0.9,
        }
    }
}

/// Everything an experiment needs. Every field has a default matching the
/// published protocol, so an empty file is a valid config.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub algorithms: Vec<String>,
    pub problems: Vec<String>,
    /// Objective sequences such as `2-3-4-3-2` or `2..7..2` (one step at a
    /// time from 2 up to 7 and back).
    pub schedules: Vec<String>,
    pub tau: Vec<usize>,
    pub runs: usize,
    pub base_seed: u64,
    pub population_size: usize,
    pub theta: usize,
    pub warmup: usize,
    /// Points in each sampled true Pareto front.
    pub pf_points: usize,
    /// Monte Carlo samples for HV with four or more objectives.
    pub hv_samples: usize,
    pub dnsga2_replacement: f64,
    pub dtaea_ca_mating: f64,
    pub variation: VariationSection,
    pub moead: MoeadSection,
    #[serde(skip_serializing)]
    pub output: PathBuf,
    #[serde(skip_serializing)]
    pub workers: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            algorithms: ["ktdmoea", "dtaea", "nsga2", "dnsga2", "moead"].map(String::from).to_vec(),
            problems: ProblemKind::ALL.iter().map(ToString::to_string).collect(),
            schedules: vec!["2..7..2".into()],
            tau: vec![5, 25, 50, 200],
            runs: 31,
            base_seed: 1,
            population_size: 300,
            theta: 2,
            warmup: 1000,
            pf_points: 10_000,
            hv_samples: ktdmoea::metrics::DEFAULT_MC_SAMPLES,
            dnsga2_replacement: 0.2,
            dtaea_ca_mating: 0.9,
            variation: VariationSection::default(),
            moead: MoeadSection::default(),
            output: PathBuf::from("results"),
            workers: 0,
        }
    }
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
        Self::from_toml(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.algorithms.is_empty() || self.problems.is_empty() || self.schedules.is_empty() || self.tau.is_empty() {
            return Err(HarnessError::Config("algorithms, problems, schedules and tau must be nonempty".into()));
        }
        if self.runs == 0 || self.pf_points == 0 {
            return Err(HarnessError::Config("runs and pf_points must be positive".into()));
        }
        self.algorithm_specs()?;
        self.problem_kinds()?;
        let max_m = self
            .schedule_grid()?
            .iter()
            .flat_map(|s| s.segments().to_vec())
            .max()
            .unwrap_or(2);
        for spec in self.algorithm_specs()? {
            self.optimizer_config(&spec).validate(max_m)?;
        }
        Ok(())
    }

    pub fn algorithm_specs(&self) -> Result<Vec<AlgorithmSpec>> {
        self.algorithms.iter().map(|a| a.parse()).collect()
    }

    pub fn problem_kinds(&self) -> Result<Vec<ProblemKind>> {
        Ok(self.problems.iter().map(|p| p.parse()).collect::<ktdmoea::Result<_>>()?)
    }

    /// One schedule per (sequence, tau) pair, sequence-major.
    pub fn schedule_grid(&self) -> Result<Vec<ChangeSchedule>> {
        let mut out = Vec::new();
        for s in &self.schedules {
            let seq: ObjectiveSequence = s.parse()?;
            for &tau in &self.tau {
                out.push(ChangeSchedule::new(seq.0.clone(), tau, self.warmup)?);
            }
        }
        Ok(out)
    }

    pub fn optimizer_config(&self, spec: &AlgorithmSpec) -> OptimizerConfig {
        OptimizerConfig {
            population_size: self.population_size,
            variation: VariationConfig {
                crossover_probability: self.variation.crossover_probability,
                crossover_eta: self.variation.crossover_eta,
                mutation_probability: self.variation.mutation_probability,
                mutation_eta: self.variation.mutation_eta,
            },
            theta: spec.theta.unwrap_or(self.theta),
            moead_neighbourhood: self.moead.neighbourhood,
            moead_max_replacements: self.moead.max_replacements,
            moead_delta: self.moead.delta,
            dnsga2_replacement: self.dnsga2_replacement,
            dtaea_ca_mating: self.dtaea_ca_mating,
        }
    }

    /// SHA-256 over the result-affecting fields, hex encoded.
    pub fn hash(&self) -> String {
        let canonical = serde_json::to_string(self).expect("config serializes");
        let digest = Sha256::digest(canonical.as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}
