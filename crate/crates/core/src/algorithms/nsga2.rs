use super::common::{offspring, random_population, reevaluate};
use super::{AlgorithmKind, Optimizer, OptimizerConfig};
use crate::error::Result;
use crate::pareto::nondominated_sort;
use crate::problems::DynamicProblem;
use crate::random::RandomSource;
use crate::types::Individual;

/// Crowding distance of each point within one front; boundary points get
/// infinity.
pub fn crowding_distance<P: AsRef<[f64]>>(front: &[P]) -> Vec<f64> {
    let n = front.len();
    let mut dist = vec![0.0; n];
    if n == 0 {
        return dist;
    }
    let m = front[0].as_ref().len();
    let mut order: Vec<usize> = (0..n).collect();
    for k in 0..m {
        order.sort_by(|&a, &b| front[a].as_ref()[k].total_cmp(&front[b].as_ref()[k]));
        let lo = front[order[0]].as_ref()[k];
        let hi = front[order[n - 1]].as_ref()[k];
        dist[order[0]] = f64::INFINITY;
        dist[order[n - 1]] = f64::INFINITY;
        if hi - lo <= 0.0 {
            continue;
        }
        for w in 1..n - 1 {
            let gap = front[order[w + 1]].as_ref()[k] - front[order[w - 1]].as_ref()[k];
            dist[order[w]] += gap / (hi - lo);
        }
    }
    dist
}

/// NSGA-II. With `random_replacement` set it becomes DNSGA-II, which
/// replaces a fraction of the population by random solutions at each change.
pub struct Nsga2 {
    cfg: OptimizerConfig,
    random_replacement: bool,
    pop: Vec<Individual>,
    rank: Vec<usize>,
    crowding: Vec<f64>,
    t: usize,
    rng: RandomSource,
}

impl Nsga2 {
    pub fn new(cfg: OptimizerConfig, problem: &DynamicProblem, seed: u64, random_replacement: bool) -> Result<Self> {
        let mut rng = RandomSource::new(seed);
        let pop = random_population(problem, cfg.population_size, 0, &mut rng)?;
        let mut me = Self {
            cfg,
            random_replacement,
            pop,
            rank: Vec::new(),
            crowding: Vec::new(),
            t: 0,
            rng,
        };
        me.refresh_fitness();
        Ok(me)
    }

    fn refresh_fitness(&mut self) {
        let f: Vec<&[f64]> = self.pop.iter().map(|p| p.f.as_slice()).collect();
        self.rank = vec![0; self.pop.len()];
        self.crowding = vec![0.0; self.pop.len()];
        for (r, front) in nondominated_sort(&f).iter().enumerate() {
            let pts: Vec<&[f64]> = front.iter().map(|&i| f[i]).collect();
            for (&i, d) in front.iter().zip(crowding_distance(&pts)) {
                self.rank[i] = r;
                self.crowding[i] = d;
            }
        }
    }

    fn tournament(rank: &[usize], crowding: &[f64], rng: &mut RandomSource) -> usize {
        let a = rng.index(rank.len());
        let b = rng.index(rank.len());
        if rank[a] != rank[b] {
            return if rank[a] < rank[b] { a } else { b };
        }
        if crowding[a] != crowding[b] {
            return if crowding[a] > crowding[b] { a } else { b };
        }
        if rng.unit() < 0.5 {
            a
        } else {
            b
        }
    }

    /// Rank-and-crowding survival of `n` members.
    fn survive(merged: Vec<Individual>, n: usize) -> Vec<Individual> {
        let f: Vec<&[f64]> = merged.iter().map(|p| p.f.as_slice()).collect();
        let mut keep = Vec::with_capacity(n);
        for front in nondominated_sort(&f) {
            if keep.len() + front.len() <= n {
                keep.extend(front);
            } else {
                let pts: Vec<&[f64]> = front.iter().map(|&i| f[i]).collect();
                let cd = crowding_distance(&pts);
                let mut order: Vec<usize> = (0..front.len()).collect();
                order.sort_by(|&a, &b| cd[b].total_cmp(&cd[a]).then(front[a].cmp(&front[b])));
                keep.extend(order.into_iter().take(n - keep.len()).map(|o| front[o]));
            }
            if keep.len() == n {
                break;
            }
        }
        keep.iter().map(|&i| merged[i].clone()).collect()
    }
}

impl Optimizer for Nsga2 {
    fn kind(&self) -> AlgorithmKind {
        if self.random_replacement {
            AlgorithmKind::Dnsga2
        } else {
            AlgorithmKind::Nsga2
        }
    }

    fn environment(&self) -> usize {
        self.t
    }

    fn population(&self) -> &[Individual] {
        &self.pop
    }

    fn evolve(&mut self, problem: &DynamicProblem) -> Result<()> {
        let (pop, rank, crowding) = (&self.pop, &self.rank, &self.crowding);
        let children = offspring(self.cfg.population_size, problem, self.t, &self.cfg.variation, &mut self.rng, |rng| {
            let a = Self::tournament(rank, crowding, rng);
            let b = Self::tournament(rank, crowding, rng);
            (pop[a].x.clone(), pop[b].x.clone())
        })?;
        let mut merged = std::mem::take(&mut self.pop);
        merged.extend(children);
        self.pop = Self::survive(merged, self.cfg.population_size);
        self.refresh_fitness();
        Ok(())
    }

    fn respond_to_change(&mut self, problem: &DynamicProblem, t_new: usize) -> Result<()> {
        self.pop = reevaluate(&self.pop, problem, t_new)?;
        if self.random_replacement {
            let count = (self.cfg.dnsga2_replacement * self.pop.len() as f64).round() as usize;
            let mut idx: Vec<usize> = (0..self.pop.len()).collect();
            self.rng.shuffle(&mut idx);
            let fresh = random_population(problem, count, t_new, &mut self.rng)?;
            for (&i, p) in idx.iter().zip(fresh) {
                self.pop[i] = p;
            }
        }
        self.t = t_new;
        self.refresh_fitness();
        Ok(())
    }
}
