use super::ca_update::ca_update;
use super::common::{offspring, random_population, reevaluate};
use super::dtaea::reconstruct_archives;
use super::{AlgorithmKind, Optimizer, OptimizerConfig};
use crate::error::Result;
use crate::operators::WeightVectorSet;
use crate::pareto::nondominated_indices;
use crate::problems::DynamicProblem;
use crate::random::RandomSource;
use crate::transfer::{transfer, TransferConfig, TransferPath};
use crate::types::Individual;

/// How an optimizer rebuilds its population when the objective count changes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChangeResponse {
    /// PS expansion or contraction.
    Transfer,
    /// DTAEA's archive reconstruction: copy on increase, nondominated split
    /// on decrease.
    Reconstruct,
}

pub struct Ktdmoea {
    cfg: OptimizerConfig,
    response: ChangeResponse,
    pop: Vec<Individual>,
    t: usize,
    weights: WeightVectorSet,
    rng: RandomSource,
    last_path: Option<TransferPath>,
}

impl Ktdmoea {
    pub fn new(cfg: OptimizerConfig, problem: &DynamicProblem, seed: u64, response: ChangeResponse) -> Result<Self> {
        let mut rng = RandomSource::new(seed);
        let pop = random_population(problem, cfg.population_size, 0, &mut rng)?;
        let weights = WeightVectorSet::for_population(problem.objectives_at(0)?, cfg.population_size);
        Ok(Self {
            cfg,
            response,
            pop,
            t: 0,
            weights,
            rng,
            last_path: None,
        })
    }

    /// Which transfer branch the most recent change took.
    pub fn last_transfer(&self) -> Option<TransferPath> {
        self.last_path
    }

    pub fn transfer_config(&self) -> TransferConfig {
        TransferConfig {
            theta: self.cfg.theta,
            population_size: self.cfg.population_size,
            variation: self.cfg.variation,
            ..TransferConfig::default()
        }
    }

    /// Replace the population, for tests and warm starts.
    pub fn set_population(&mut self, pop: Vec<Individual>, t: usize, problem: &DynamicProblem) -> Result<()> {
        self.weights = WeightVectorSet::for_population(problem.objectives_at(t)?, self.cfg.population_size);
        self.pop = pop;
        self.t = t;
        Ok(())
    }

    /// Offspring from uniformly drawn parent pairs.
    pub fn make_offspring(&mut self, problem: &DynamicProblem) -> Result<Vec<Individual>> {
        let pop = &self.pop;
        offspring(self.cfg.population_size, problem, self.t, &self.cfg.variation, &mut self.rng, |rng| {
            let (a, b) = rng.distinct_pair(pop.len());
            (pop[a].x.clone(), pop[b].x.clone())
        })
    }
}

impl Optimizer for Ktdmoea {
    fn kind(&self) -> AlgorithmKind {
        match self.response {
            ChangeResponse::Transfer => AlgorithmKind::Ktdmoea,
            ChangeResponse::Reconstruct => AlgorithmKind::KtdmoeaV1,
        }
    }

    fn environment(&self) -> usize {
        self.t
    }

    fn population(&self) -> &[Individual] {
        &self.pop
    }

    fn evolve(&mut self, problem: &DynamicProblem) -> Result<()> {
        let children = self.make_offspring(problem)?;
        self.pop = ca_update(&self.pop, &children, &self.weights, self.cfg.population_size);
        Ok(())
    }

    fn respond_to_change(&mut self, problem: &DynamicProblem, t_new: usize) -> Result<()> {
        let m_old = problem.objectives_at(self.t)?;
        let m_new = problem.objectives_at(t_new)?;
        let n = self.cfg.population_size;
        let weights = WeightVectorSet::for_population(m_new, n);
        self.last_path = None;
        self.pop = if m_old == m_new {
            reevaluate(&self.pop, problem, t_new)?
        } else {
            match self.response {
                ChangeResponse::Transfer => {
                    let f: Vec<&[f64]> = self.pop.iter().map(|p| p.f.as_slice()).collect();
                    let ps: Vec<Individual> =
                        nondominated_indices(&f).into_iter().map(|i| self.pop[i].clone()).collect();
                    let cfg = self.transfer_config();
                    let out = transfer(&ps, problem, self.t, t_new, &cfg, &weights, &mut self.rng)?;
                    self.last_path = Some(out.path);
                    out.population
                }
                ChangeResponse::Reconstruct => {
                    let (mut ca, _) = reconstruct_archives(&self.pop, problem, self.t, t_new, n, &mut self.rng)?;
                    let missing = n - ca.len();
                    ca.extend(random_population(problem, missing, t_new, &mut self.rng)?);
                    ca
                }
            }
        };
        self.weights = weights;
        self.t = t_new;
        Ok(())
    }
}
