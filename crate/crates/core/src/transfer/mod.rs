//! Knowledge transfer across a change in the number of objectives.
//!
//! When objectives are added the old Pareto set is expanded along directions
//! found by probing the new environment. When objectives are removed the old
//! set is re-evaluated, its nondominated part kept and then spread outwards.

mod contraction;
mod expansion;
mod selection;

pub use contraction::{contract_ps, extrapolate, spread_solution};
pub use expansion::{
    base_count, boundary_coefficient, directions_from_detectives, expand_ps,
    search_expansion_directions, DirectionSet,
};
pub use selection::{even_objective_selection, even_selection_indices};

use crate::error::{Error, Result};
use crate::operators::{VariationConfig, WeightVectorSet};
use crate::problems::DynamicProblem;
use crate::random::RandomSource;
use crate::types::Individual;

#[derive(Debug, Clone, PartialEq)]
pub struct TransferConfig {
    /// Solutions generated per base solution and direction.
    pub theta: usize,
    /// Size of the transferred population and of the detective population.
    pub population_size: usize,
    /// Directions whose cosine similarity exceeds `1 - dedup_tolerance` are
    /// treated as duplicates.
    pub dedup_tolerance: f64,
    pub variation: VariationConfig,
}

impl Default for TransferConfig {
    fn default() -> Self {
        Self {
            theta: 2,
            population_size: 300,
            dedup_tolerance: 1e-9,
            variation: VariationConfig::default(),
        }
    }
}

impl TransferConfig {
    pub fn validate(&self) -> Result<()> {
        if self.theta == 0 || self.population_size == 0 {
            return Err(Error::InvalidConfig("theta and population size must be positive".into()));
        }
        self.variation.validate()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransferPath {
    Expansion { directions: usize },
    Contraction,
}

#[derive(Debug, Clone)]
pub struct Transferred {
    pub population: Vec<Individual>,
    pub path: TransferPath,
}

/// Respond to a change from environment `t_old` to `t_new`. `weights` must be
/// built for the new objective count.
pub fn transfer(
    ps_t: &[Individual],
    problem: &DynamicProblem,
    t_old: usize,
    t_new: usize,
    cfg: &TransferConfig,
    weights: &WeightVectorSet,
    rng: &mut RandomSource,
) -> Result<Transferred> {
    let m_old = problem.objectives_at(t_old)?;
    let m_new = problem.objectives_at(t_new)?;
    if m_new > m_old {
        let dirs = search_expansion_directions(ps_t, problem, t_new, weights, cfg, rng)?;
        let population = expand_ps(ps_t, &dirs, cfg, problem, t_new, rng)?;
        Ok(Transferred {
            population,
            path: TransferPath::Expansion { directions: dirs.len() },
        })
    } else if m_new < m_old {
        Ok(Transferred {
            population: contract_ps(ps_t, cfg, problem, t_new, rng)?,
            path: TransferPath::Contraction,
        })
    } else {
        Err(Error::InvalidConfig(format!(
            "no objective-count change between environments {t_old} and {t_new}"
        )))
    }
}
