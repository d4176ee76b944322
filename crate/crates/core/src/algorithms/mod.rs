//! Optimizers for problems whose number of objectives changes over time.
//!
//! Every optimizer owns its random stream and is driven one generation at a
//! time by [`step`]; the change response runs in place of evolution on the
//! first generation of each new environment.

mod ca_update;
mod common;
mod dtaea;
mod ktdmoea;
mod moead;
mod nsga2;

pub use ca_update::{ca_update, ca_update_traced, convergence_indicators, CaTrace, Removal};
pub use common::{random_population, reevaluate};
pub use dtaea::{da_update, subregion_coverage, Dtaea};
pub use ktdmoea::{ChangeResponse, Ktdmoea};
pub use moead::{tchebycheff, Moead};
pub use nsga2::{crowding_distance, Nsga2};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::operators::VariationConfig;
use crate::problems::{ChangeSchedule, DynamicProblem};
use crate::types::Individual;

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerConfig {
    pub population_size: usize,
    pub variation: VariationConfig,
    /// Solutions per base and direction in PS expansion.
    pub theta: usize,
    pub moead_neighbourhood: usize,
    pub moead_max_replacements: usize,
    /// Probability of mating within the neighbourhood in MOEA/D.
    pub moead_delta: f64,
    /// Fraction of the population replaced by random solutions in DNSGA-II.
    pub dnsga2_replacement: f64,
    /// Probability that DTAEA's second parent comes from CA rather than DA.
    pub dtaea_ca_mating: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            population_size: 300,
            variation: VariationConfig::default(),
            theta: 2,
            moead_neighbourhood: 20,
            moead_max_replacements: 2,
            moead_delta: 0.9,
            dnsga2_replacement: 0.2,
            dtaea_ca_mating: 0.9,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self, max_objectives: usize) -> Result<()> {
        if self.population_size < 2 * max_objectives {
            return Err(Error::InvalidConfig(format!(
                "population size {} is below twice the largest objective count {max_objectives}",
                self.population_size
            )));
        }
        if self.theta == 0 || self.moead_neighbourhood < 2 {
            return Err(Error::InvalidConfig("theta must be >= 1 and the neighbourhood >= 2".into()));
        }
        let prob = |p: f64| (0.0..=1.0).contains(&p);
        if !prob(self.moead_delta) || !prob(self.dnsga2_replacement) || !prob(self.dtaea_ca_mating) {
            return Err(Error::InvalidConfig("probabilities must lie in [0, 1]".into()));
        }
        self.variation.validate()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgorithmKind {
    Ktdmoea,
    Dtaea,
    Nsga2,
    Dnsga2,
    Moead,
    /// DTAEA answering changes with PS expansion/contraction.
    DtaeaV1,
    /// KTDMOEA answering changes with DTAEA's archive reconstruction.
    KtdmoeaV1,
}

impl AlgorithmKind {
    pub const ALL: [AlgorithmKind; 7] = [
        AlgorithmKind::Ktdmoea,
        AlgorithmKind::Dtaea,
        AlgorithmKind::Nsga2,
        AlgorithmKind::Dnsga2,
        AlgorithmKind::Moead,
        AlgorithmKind::DtaeaV1,
        AlgorithmKind::KtdmoeaV1,
    ];

    pub fn id(self) -> &'static str {
        match self {
            AlgorithmKind::Ktdmoea => "ktdmoea",
            AlgorithmKind::Dtaea => "dtaea",
            AlgorithmKind::Nsga2 => "nsga2",
            AlgorithmKind::Dnsga2 => "dnsga2",
            AlgorithmKind::Moead => "moead",
            AlgorithmKind::DtaeaV1 => "dtaea-v1",
            AlgorithmKind::KtdmoeaV1 => "ktdmoea-v1",
        }
    }
}

impl fmt::Display for AlgorithmKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for AlgorithmKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase().replace('_', "-");
        Self::ALL
            .into_iter()
            .find(|k| k.id() == lower)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown algorithm `{s}`")))
    }
}

pub trait Optimizer: Send {
    fn kind(&self) -> AlgorithmKind;

    /// Environment index the current population was evaluated in.
    fn environment(&self) -> usize;

    /// The population quality metrics are computed on.
    fn population(&self) -> &[Individual];

    /// One generation of evolution in the current environment.
    fn evolve(&mut self, problem: &DynamicProblem) -> Result<()>;

    /// Rebuild the population for environment `t_new`.
    fn respond_to_change(&mut self, problem: &DynamicProblem, t_new: usize) -> Result<()>;
}

/// Create an optimizer with a random initial population evaluated in
/// environment 0.
pub fn build(
    kind: AlgorithmKind,
    cfg: &OptimizerConfig,
    problem: &DynamicProblem,
    seed: u64,
) -> Result<Box<dyn Optimizer>> {
    let max_m = problem.objective_counts().iter().copied().max().unwrap_or(2);
    cfg.validate(max_m)?;
    Ok(match kind {
        AlgorithmKind::Ktdmoea => Box::new(Ktdmoea::new(cfg.clone(), problem, seed, ChangeResponse::Transfer)?),
        AlgorithmKind::KtdmoeaV1 => {
            Box::new(Ktdmoea::new(cfg.clone(), problem, seed, ChangeResponse::Reconstruct)?)
        }
        AlgorithmKind::Dtaea => Box::new(Dtaea::new(cfg.clone(), problem, seed, ChangeResponse::Reconstruct)?),
        AlgorithmKind::DtaeaV1 => Box::new(Dtaea::new(cfg.clone(), problem, seed, ChangeResponse::Transfer)?),
        AlgorithmKind::Nsga2 => Box::new(Nsga2::new(cfg.clone(), problem, seed, false)?),
        AlgorithmKind::Dnsga2 => Box::new(Nsga2::new(cfg.clone(), problem, seed, true)?),
        AlgorithmKind::Moead => Box::new(Moead::new(cfg.clone(), problem, seed)?),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepEvent {
    Evolved,
    Changed { from: usize, to: usize },
}

/// Advance `optimizer` through generation `generation` of `schedule`.
pub fn step(
    optimizer: &mut dyn Optimizer,
    problem: &DynamicProblem,
    schedule: &ChangeSchedule,
    generation: usize,
) -> Result<StepEvent> {
    let pos = schedule.position(generation)?;
    let from = optimizer.environment();
    if pos.t != from {
        optimizer.respond_to_change(problem, pos.t)?;
        Ok(StepEvent::Changed { from, to: pos.t })
    } else {
        optimizer.evolve(problem)?;
        Ok(StepEvent::Evolved)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for k in AlgorithmKind::ALL {
            assert_eq!(k.to_string().parse::<AlgorithmKind>().unwrap(), k);
        }
        assert_eq!("KTDMOEA_v1".parse::<AlgorithmKind>().unwrap(), AlgorithmKind::KtdmoeaV1);
        assert!("spea2".parse::<AlgorithmKind>().is_err());
    }

    #[test]
    fn config_validation() {
        assert!(OptimizerConfig::default().validate(7).is_ok());
        let small = OptimizerConfig {
            population_size: 10,
            ..OptimizerConfig::default()
        };
        assert!(small.validate(7).is_err());
    }
}
