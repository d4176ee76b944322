use super::common::{mate, random_population, reevaluate};
use super::{AlgorithmKind, Optimizer, OptimizerConfig};
use crate::error::Result;
use crate::operators::{normalize_objectives, perpendicular_distance, WeightVectorSet};
use crate::problems::DynamicProblem;
use crate::random::RandomSource;
use crate::types::Individual;

/// Weight components below this are raised to it inside the Tchebycheff
/// function so no objective is ignored outright.
const MIN_WEIGHT: f64 = 1e-6;

/// `max_k w_k * |f_k - z_k|`.
pub fn tchebycheff(f: &[f64], w: &[f64], ideal: &[f64]) -> f64 {
    f.iter()
        .zip(w)
        .zip(ideal)
        .map(|((fk, wk), zk)| wk.max(MIN_WEIGHT) * (fk - zk).abs())
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Exactly `n` weight vectors: the full lattice when it has `n` points,
/// otherwise a max-min spread subset seeded with the axis vectors.
fn weights_for(m: usize, n: usize) -> Vec<Vec<f64>> {
    let all = WeightVectorSet::for_population(m, n).vectors;
    if all.len() == n {
        return all;
    }
    let dist = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>();
    let mut picked: Vec<usize> = (0..m)
        .filter_map(|k| all.iter().position(|w| w[k] == 1.0))
        .collect();
    let mut min_d: Vec<f64> = all
        .iter()
        .map(|w| picked.iter().map(|&p| dist(w, &all[p])).fold(f64::INFINITY, f64::min))
        .collect();
    while picked.len() < n {
        let (best, _) = min_d
            .iter()
            .enumerate()
            .filter(|(i, _)| !picked.contains(i))
            .fold((usize::MAX, f64::NEG_INFINITY), |acc, (i, &d)| if d > acc.1 { (i, d) } else { acc });
        picked.push(best);
        for (i, w) in all.iter().enumerate() {
            min_d[i] = min_d[i].min(dist(w, &all[best]));
        }
    }
    picked.into_iter().map(|i| all[i].clone()).collect()
}

fn neighbourhoods(weights: &[Vec<f64>], t: usize) -> Vec<Vec<usize>> {
    weights
        .iter()
        .map(|w| {
            let mut order: Vec<(f64, usize)> = weights
                .iter()
                .enumerate()
                .map(|(j, v)| (w.iter().zip(v).map(|(a, b)| (a - b).powi(2)).sum::<f64>(), j))
                .collect();
            order.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            order.into_iter().take(t.min(weights.len())).map(|(_, j)| j).collect()
        })
        .collect()
}

fn ideal_of(pop: &[Individual]) -> Vec<f64> {
    let m = pop[0].f.len();
    (0..m)
        .map(|k| pop.iter().map(|p| p.f[k]).fold(f64::INFINITY, f64::min))
        .collect()
}

/// MOEA/D with Tchebycheff aggregation. Member `i` of the population belongs
/// to weight vector `i`.
pub struct Moead {
    cfg: OptimizerConfig,
    pop: Vec<Individual>,
    weights: Vec<Vec<f64>>,
    neighbours: Vec<Vec<usize>>,
    ideal: Vec<f64>,
    t: usize,
    rng: RandomSource,
}

impl Moead {
    pub fn new(cfg: OptimizerConfig, problem: &DynamicProblem, seed: u64) -> Result<Self> {
        let mut rng = RandomSource::new(seed);
        let n = cfg.population_size;
        let pop = random_population(problem, n, 0, &mut rng)?;
        let weights = weights_for(problem.objectives_at(0)?, n);
        let neighbours = neighbourhoods(&weights, cfg.moead_neighbourhood);
        let ideal = ideal_of(&pop);
        Ok(Self {
            cfg,
            pop,
            weights,
            neighbours,
            ideal,
            t: 0,
            rng,
        })
    }

    pub fn weights(&self) -> &[Vec<f64>] {
        &self.weights
    }

    pub fn ideal(&self) -> &[f64] {
        &self.ideal
    }
}

impl Optimizer for Moead {
    fn kind(&self) -> AlgorithmKind {
        AlgorithmKind::Moead
    }

    fn environment(&self) -> usize {
        self.t
    }

    fn population(&self) -> &[Individual] {
        &self.pop
    }

    fn evolve(&mut self, problem: &DynamicProblem) -> Result<()> {
        let n = self.pop.len();
        let mut order: Vec<usize> = (0..n).collect();
        self.rng.shuffle(&mut order);
        let everyone: Vec<usize> = (0..n).collect();
        for i in order {
            let local = self.rng.unit() < self.cfg.moead_delta;
            let pool = if local { &self.neighbours[i] } else { &everyone };
            let (a, b) = self.rng.distinct_pair(pool.len());
            let (pa, pb) = (pool[a], pool[b]);
            let (child, _) = mate(&self.pop[pa].x, &self.pop[pb].x, problem, &self.cfg.variation, &mut self.rng);
            let f = problem.evaluate(&child, self.t)?;
            for (z, v) in self.ideal.iter_mut().zip(&f) {
                *z = z.min(*v);
            }
            let mut candidates = pool.clone();
            self.rng.shuffle(&mut candidates);
            let mut replaced = 0;
            for j in candidates {
                if replaced >= self.cfg.moead_max_replacements {
                    break;
                }
                let w = &self.weights[j];
                if tchebycheff(&f, w, &self.ideal) <= tchebycheff(&self.pop[j].f, w, &self.ideal) {
                    self.pop[j] = Individual::new(child.clone(), f.clone(), self.t);
                    replaced += 1;
                }
            }
        }
        Ok(())
    }

    fn respond_to_change(&mut self, problem: &DynamicProblem, t_new: usize) -> Result<()> {
        let re = reevaluate(&self.pop, problem, t_new)?;
        let n = re.len();
        self.weights = weights_for(problem.objectives_at(t_new)?, n);
        self.neighbours = neighbourhoods(&self.weights, self.cfg.moead_neighbourhood);
        self.ideal = ideal_of(&re);

        // greedy one-to-one assignment by perpendicular distance
        let f: Vec<&[f64]> = re.iter().map(|p| p.f.as_slice()).collect();
        let norm = normalize_objectives(&f);
        let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(n * n);
        for (i, p) in norm.iter().enumerate() {
            for (j, w) in self.weights.iter().enumerate() {
                pairs.push((perpendicular_distance(p, w), i, j));
            }
        }
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
        let mut slot: Vec<Option<usize>> = vec![None; n];
        let mut used = vec![false; n];
        for (_, i, j) in pairs {
            if !used[i] && slot[j].is_none() {
                used[i] = true;
                slot[j] = Some(i);
            }
        }
        self.pop = slot.into_iter().map(|s| re[s.expect("bijective assignment")].clone()).collect();
        self.t = t_new;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ideal_point_scores_zero() {
        let z = [0.1, 0.2, 0.3];
        assert_eq!(tchebycheff(&z, &[0.2, 0.3, 0.5], &z), 0.0);
        assert!((tchebycheff(&[1.0, 1.0], &[0.0, 1.0], &[0.0, 0.0]) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn weight_subset_has_exact_size() {
        for m in 2..=7 {
            let w = weights_for(m, 100);
            assert_eq!(w.len(), 100);
            for k in 0..m {
                assert!(w.iter().any(|v| v[k] == 1.0));
            }
        }
    }
}
