use super::selection::{even_objective_selection, even_selection_indices};
use super::TransferConfig;
use crate::error::{Error, Result};
use crate::operators::{associate_subregions, polynomial_mutation, WeightVectorSet};
use crate::pareto::{dominates, extreme_points, nondominated_indices};
use crate::problems::DynamicProblem;
use crate::random::RandomSource;
use crate::types::Individual;

/// Unit decision-space directions leading away from an anchor solution.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectionSet {
    pub anchor: Individual,
    pub directions: Vec<Vec<f64>>,
    /// The detective solution each direction points at, evaluated in the new
    /// environment.
    pub endpoints: Vec<Individual>,
}

impl DirectionSet {
    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }
}

/// Largest step along `d` from `x` that stays inside the box. Components of
/// `d` that are zero impose no limit.
pub fn boundary_coefficient(x: &[f64], d: &[f64], lower: &[f64], upper: &[f64]) -> Result<f64> {
    let mut c = f64::INFINITY;
    for k in 0..x.len() {
        let para = if d[k] > 0.0 {
            (upper[k] - x[k]) / d[k]
        } else if d[k] < 0.0 {
            (lower[k] - x[k]) / d[k]
        } else {
            continue;
        };
        c = c.min(para);
    }
    if c.is_infinite() {
        return Err(Error::ZeroDirection);
    }
    Ok(c.max(0.0))
}

/// Re-evaluate a population in environment `t`.
pub(crate) fn reevaluate(pop: &[Individual], problem: &DynamicProblem, t: usize) -> Result<Vec<Individual>> {
    pop.iter()
        .map(|p| Ok(Individual::new(p.x.clone(), problem.evaluate(&p.x, t)?, t)))
        .collect()
}

pub(crate) fn evaluated(x: Vec<f64>, problem: &DynamicProblem, t: usize) -> Result<Individual> {
    let f = problem.evaluate(&x, t)?;
    Ok(Individual::new(x, f, t))
}

/// Probe the new environment around a random extreme point of `ps_t` and
/// return directions towards detective solutions that reach subregions the
/// old set does not cover.
pub fn search_expansion_directions(
    ps_t: &[Individual],
    problem: &DynamicProblem,
    t_new: usize,
    weights: &WeightVectorSet,
    cfg: &TransferConfig,
    rng: &mut RandomSource,
) -> Result<DirectionSet> {
    if ps_t.is_empty() {
        return Err(Error::EmptyInput("PS_t"));
    }
    let f: Vec<&[f64]> = ps_t.iter().map(|p| p.f.as_slice()).collect();
    let extremes = extreme_points(&f)?;
    let anchor = ps_t[extremes[rng.index(extremes.len())]].clone();

    let detectives = (0..cfg.population_size)
        .map(|_| {
            let x = polynomial_mutation(&anchor.x, problem.lower(), problem.upper(), &cfg.variation, rng);
            evaluated(x, problem, t_new)
        })
        .collect::<Result<Vec<_>>>()?;
    let ps_new = reevaluate(ps_t, problem, t_new)?;
    Ok(directions_from_detectives(anchor, &ps_new, &detectives, weights, cfg.dedup_tolerance))
}

/// Filter detective solutions against the re-evaluated old set and turn the
/// survivors into unit directions from `anchor`.
pub fn directions_from_detectives(
    anchor: Individual,
    ps_new: &[Individual],
    detectives: &[Individual],
    weights: &WeightVectorSet,
    dedup_tolerance: f64,
) -> DirectionSet {
    let front: Vec<&Individual> = nondominated_indices(&detectives.iter().map(|d| d.f.as_slice()).collect::<Vec<_>>())
        .into_iter()
        .map(|i| &detectives[i])
        .collect();
    let p_non: Vec<&Individual> = front
        .into_iter()
        .filter(|d| !ps_new.iter().any(|p| dominates(&p.f, &d.f)))
        .collect();

    let mut combined: Vec<&[f64]> = p_non.iter().map(|d| d.f.as_slice()).collect();
    combined.extend(ps_new.iter().map(|p| p.f.as_slice()));
    let regions = associate_subregions(&combined, weights);
    let (non_regions, old_regions) = regions.split_at(p_non.len());

    let mut set = DirectionSet {
        anchor,
        directions: Vec::new(),
        endpoints: Vec::new(),
    };
    for (d, region) in p_non.iter().zip(non_regions) {
        if old_regions.contains(region) {
            continue;
        }
        let diff: Vec<f64> = d.x.iter().zip(&set.anchor.x).map(|(a, b)| a - b).collect();
        let norm = diff.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let dir: Vec<f64> = diff.iter().map(|v| v / norm).collect();
        let duplicate = set.directions.iter().any(|e| {
            let cos: f64 = e.iter().zip(&dir).map(|(a, b)| a * b).sum();
            cos > 1.0 - dedup_tolerance
        });
        if !duplicate {
            set.directions.push(dir);
            set.endpoints.push((*d).clone());
        }
    }
    set
}

/// Number of base solutions per direction set. When there are more
/// directions than the budget allows, the caller subsamples directions first.
pub fn base_count(n: usize, m_old: usize, n_dir: usize, theta: usize) -> usize {
    n.saturating_sub(m_old) / (n_dir * theta)
}

/// Build the transferred population for an objective-count increase.
pub fn expand_ps(
    ps_t: &[Individual],
    directions: &DirectionSet,
    cfg: &TransferConfig,
    problem: &DynamicProblem,
    t_new: usize,
    rng: &mut RandomSource,
) -> Result<Vec<Individual>> {
    if ps_t.is_empty() {
        return Err(Error::EmptyInput("PS_t"));
    }
    let n = cfg.population_size;
    if directions.is_empty() {
        return expansion_fallback(ps_t, cfg, problem, t_new, rng);
    }
    let m_old = ps_t[0].f.len();
    let theta = cfg.theta;

    let mut dirs: Vec<&Vec<f64>> = directions.directions.iter().collect();
    let budget = n.saturating_sub(m_old) / theta;
    if budget == 0 {
        return expansion_fallback(ps_t, cfg, problem, t_new, rng);
    }
    if dirs.len() > budget {
        rng.shuffle(&mut dirs);
        dirs.truncate(budget);
    }
    let n_base = base_count(n, m_old, dirs.len(), theta);
    let bases = even_objective_selection(ps_t, n_base);

    let mut out = Vec::with_capacity(n);
    for base in &bases {
        for d in &dirs {
            let c = boundary_coefficient(&base.x, d, problem.lower(), problem.upper())?;
            for _ in 0..theta {
                let step = c * rng.unit_open_closed();
                let mut x: Vec<f64> = base.x.iter().zip(d.iter()).map(|(a, b)| a + step * b).collect();
                problem.clamp(&mut x);
                out.push(evaluated(x, problem, t_new)?);
            }
        }
    }
    for i in even_selection_indices(ps_t, n - out.len()) {
        out.push(evaluated(ps_t[i].x.clone(), problem, t_new)?);
    }
    Ok(out)
}

/// Used when the direction search finds nothing: keep an even selection of
/// the old set and mutate copies of it for the rest.
fn expansion_fallback(
    ps_t: &[Individual],
    cfg: &TransferConfig,
    problem: &DynamicProblem,
    t_new: usize,
    rng: &mut RandomSource,
) -> Result<Vec<Individual>> {
    let n = cfg.population_size;
    let kept = n.min(ps_t.len());
    let mut out = Vec::with_capacity(n);
    for i in even_selection_indices(ps_t, kept) {
        out.push(evaluated(ps_t[i].x.clone(), problem, t_new)?);
    }
    for i in even_selection_indices(ps_t, n - kept) {
        let x = polynomial_mutation(&ps_t[i].x, problem.lower(), problem.upper(), &cfg.variation, rng);
        out.push(evaluated(x, problem, t_new)?);
    }
    Ok(out)
}
