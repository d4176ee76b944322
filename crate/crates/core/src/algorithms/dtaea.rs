use super::ca_update::ca_update;
use super::common::{offspring, random_population, reevaluate};
use super::ktdmoea::ChangeResponse;
use super::{AlgorithmKind, Optimizer, OptimizerConfig};
use crate::error::Result;
use crate::operators::{nearest_ray_index, normalize_objectives, WeightVectorSet};
use crate::pareto::{front_ranks, nondominated_indices};
use crate::problems::DynamicProblem;
use crate::random::RandomSource;
use crate::transfer::{transfer, TransferConfig};
use crate::types::Individual;

/// Rebuild (CA, DA) after an objective-count change. On an increase the old
/// CA is kept whole and DA is random; on a decrease the re-evaluated CA is
/// split into its nondominated and dominated members, with DA topped up by
/// random solutions.
pub(crate) fn reconstruct_archives(
    ca: &[Individual],
    problem: &DynamicProblem,
    t_old: usize,
    t_new: usize,
    n: usize,
    rng: &mut RandomSource,
) -> Result<(Vec<Individual>, Vec<Individual>)> {
    let m_old = problem.objectives_at(t_old)?;
    let m_new = problem.objectives_at(t_new)?;
    let re = reevaluate(ca, problem, t_new)?;
    if m_new >= m_old {
        let da = random_population(problem, n, t_new, rng)?;
        return Ok((re, da));
    }
    let f: Vec<&[f64]> = re.iter().map(|p| p.f.as_slice()).collect();
    let front = nondominated_indices(&f);
    let mut in_front = vec![false; re.len()];
    for &i in &front {
        in_front[i] = true;
    }
    let mut new_ca = Vec::with_capacity(front.len());
    let mut new_da = Vec::new();
    for (p, keep) in re.into_iter().zip(in_front) {
        if keep {
            new_ca.push(p);
        } else {
            new_da.push(p);
        }
    }
    let missing = n.saturating_sub(new_da.len());
    new_da.extend(random_population(problem, missing, t_new, rng)?);
    Ok((new_ca, new_da))
}

/// Keep `n` members of `da ++ offspring`, preferring members in subregions
/// that `ca` covers thinly. In round `k` every subregion holding fewer than
/// `k` members of CA and of the new DA together receives its best remaining
/// candidate (lowest front rank, then lowest convergence indicator).
pub fn da_update(
    da: &[Individual],
    offspring: &[Individual],
    ca: &[Individual],
    weights: &WeightVectorSet,
    n: usize,
) -> Vec<Individual> {
    let merged: Vec<&Individual> = da.iter().chain(offspring).collect();
    let mut all: Vec<&[f64]> = merged.iter().map(|p| p.f.as_slice()).collect();
    all.extend(ca.iter().map(|p| p.f.as_slice()));
    let normalized = normalize_objectives(&all);
    let regions: Vec<usize> = normalized.iter().map(|p| nearest_ray_index(p, weights)).collect();
    let indicators: Vec<f64> = normalized.iter().map(|p| p.iter().sum()).collect();
    let ranks = front_ranks(&all[..merged.len()]);

    let mut occupancy = vec![0usize; weights.len()];
    for &r in &regions[merged.len()..] {
        occupancy[r] += 1;
    }
    let mut candidates: Vec<Vec<usize>> = vec![Vec::new(); weights.len()];
    for i in 0..merged.len() {
        candidates[regions[i]].push(i);
    }
    for list in candidates.iter_mut() {
        // best candidate last so it can be popped
        list.sort_by(|&a, &b| {
            ranks[b]
                .cmp(&ranks[a])
                .then(indicators[b].total_cmp(&indicators[a]))
                .then(b.cmp(&a))
        });
    }

    let mut chosen = Vec::with_capacity(n);
    let mut taken = vec![false; merged.len()];
    let mut level = 1;
    while chosen.len() < n {
        let mut progressed = false;
        for (r, list) in candidates.iter_mut().enumerate() {
            if chosen.len() >= n {
                break;
            }
            if occupancy[r] < level {
                if let Some(i) = list.pop() {
                    occupancy[r] += 1;
                    taken[i] = true;
                    chosen.push(i);
                    progressed = true;
                }
            }
        }
        if !progressed && candidates.iter().all(Vec::is_empty) {
            break;
        }
        level += 1;
    }
    chosen.iter().map(|&i| merged[i].clone()).collect()
}

/// Two-archive baseline: CA drives convergence, DA keeps diversity.
pub struct Dtaea {
    cfg: OptimizerConfig,
    response: ChangeResponse,
    ca: Vec<Individual>,
    da: Vec<Individual>,
    t: usize,
    weights: WeightVectorSet,
    rng: RandomSource,
}

impl Dtaea {
    pub fn new(cfg: OptimizerConfig, problem: &DynamicProblem, seed: u64, response: ChangeResponse) -> Result<Self> {
        let mut rng = RandomSource::new(seed);
        let ca = random_population(problem, cfg.population_size, 0, &mut rng)?;
        let weights = WeightVectorSet::for_population(problem.objectives_at(0)?, cfg.population_size);
        Ok(Self {
            da: ca.clone(),
            ca,
            cfg,
            response,
            t: 0,
            weights,
            rng,
        })
    }

    pub fn convergence_archive(&self) -> &[Individual] {
        &self.ca
    }

    pub fn diversity_archive(&self) -> &[Individual] {
        &self.da
    }
}

/// Fraction of `weights` subregions occupied by `pop`, with objectives
/// scaled to `[0, 1]` by the given ideal and nadir points.
pub fn subregion_coverage(pop: &[Individual], weights: &WeightVectorSet, ideal: &[f64], nadir: &[f64]) -> f64 {
    let mut hit = vec![false; weights.len()];
    for p in pop {
        let scaled: Vec<f64> = p
            .f
            .iter()
            .zip(ideal.iter().zip(nadir))
            .map(|(v, (lo, hi))| if hi > lo { (v - lo) / (hi - lo) } else { 0.0 })
            .collect();
        hit[nearest_ray_index(&scaled, weights)] = true;
    }
    hit.iter().filter(|&&h| h).count() as f64 / weights.len() as f64
}

impl Optimizer for Dtaea {
    fn kind(&self) -> AlgorithmKind {
        match self.response {
            ChangeResponse::Reconstruct => AlgorithmKind::Dtaea,
            ChangeResponse::Transfer => AlgorithmKind::DtaeaV1,
        }
    }

    fn environment(&self) -> usize {
        self.t
    }

    fn population(&self) -> &[Individual] {
        &self.ca
    }

    fn evolve(&mut self, problem: &DynamicProblem) -> Result<()> {
        let (ca, da) = (&self.ca, &self.da);
        let p_ca = self.cfg.dtaea_ca_mating;
        let children = offspring(self.cfg.population_size, problem, self.t, &self.cfg.variation, &mut self.rng, |rng| {
            let a = &ca[rng.index(ca.len())];
            let b = if da.is_empty() || rng.unit() < p_ca {
                &ca[rng.index(ca.len())]
            } else {
                &da[rng.index(da.len())]
            };
            (a.x.clone(), b.x.clone())
        })?;
        let n = self.cfg.population_size;
        self.ca = ca_update(&self.ca, &children, &self.weights, n);
        self.da = da_update(&self.da, &children, &self.ca, &self.weights, n);
        Ok(())
    }

    fn respond_to_change(&mut self, problem: &DynamicProblem, t_new: usize) -> Result<()> {
        let m_old = problem.objectives_at(self.t)?;
        let m_new = problem.objectives_at(t_new)?;
        let n = self.cfg.population_size;
        let weights = WeightVectorSet::for_population(m_new, n);
        if m_old == m_new {
            self.ca = reevaluate(&self.ca, problem, t_new)?;
            self.da = reevaluate(&self.da, problem, t_new)?;
        } else {
            match self.response {
                ChangeResponse::Reconstruct => {
                    let (ca, da) = reconstruct_archives(&self.ca, problem, self.t, t_new, n, &mut self.rng)?;
                    self.ca = ca;
                    self.da = da;
                }
                ChangeResponse::Transfer => {
                    let f: Vec<&[f64]> = self.ca.iter().map(|p| p.f.as_slice()).collect();
                    let ps: Vec<Individual> =
                        nondominated_indices(&f).into_iter().map(|i| self.ca[i].clone()).collect();
                    let cfg = TransferConfig {
                        theta: self.cfg.theta,
                        population_size: n,
                        variation: self.cfg.variation,
                        ..TransferConfig::default()
                    };
                    let out = transfer(&ps, problem, self.t, t_new, &cfg, &weights, &mut self.rng)?;
                    self.da = out.population.clone();
                    self.ca = out.population;
                }
            }
        }
        self.weights = weights;
        self.t = t_new;
        Ok(())
    }
}
