use super::expansion::{boundary_coefficient, evaluated, reevaluate};
use super::selection::even_objective_selection;
use super::TransferConfig;
use crate::error::{Error, Result};
use crate::operators::polynomial_mutation;
use crate::pareto::{extreme_points, nondominated_indices};
use crate::problems::DynamicProblem;
use crate::random::RandomSource;
use crate::types::Individual;

/// Push `x_e` away from its neighbour all the way to the box boundary.
/// Returns `None` when the two points coincide.
pub fn spread_solution(x_e: &[f64], neighbour: &[f64], lower: &[f64], upper: &[f64]) -> Option<Vec<f64>> {
    let diff: Vec<f64> = x_e.iter().zip(neighbour).map(|(a, b)| a - b).collect();
    let norm = diff.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm == 0.0 {
        return None;
    }
    let d: Vec<f64> = diff.iter().map(|v| v / norm).collect();
    let c = boundary_coefficient(x_e, &d, lower, upper).ok()?;
    Some(
        x_e.iter()
            .zip(&d)
            .zip(lower.iter().zip(upper))
            .map(|((a, b), (&lo, &hi))| (a + c * b).clamp(lo, hi))
            .collect(),
    )
}

/// `x_a + r * (x_a - x_b)` clamped into the box.
pub fn extrapolate(x_a: &[f64], x_b: &[f64], r: f64, lower: &[f64], upper: &[f64]) -> Vec<f64> {
    x_a.iter()
        .zip(x_b)
        .zip(lower.iter().zip(upper))
        .map(|((a, b), (&lo, &hi))| (a + r * (a - b)).clamp(lo, hi))
        .collect()
}

fn nearest_neighbour(pop: &[Individual], i: usize) -> Option<usize> {
    let mut best = None;
    let mut best_d = f64::INFINITY;
    for (j, other) in pop.iter().enumerate() {
        let d: f64 = pop[i].x.iter().zip(&other.x).map(|(a, b)| (a - b).powi(2)).sum();
        if j != i && d > 0.0 && d < best_d {
            best_d = d;
            best = Some(j);
        }
    }
    best
}

/// Build the transferred population for an objective-count decrease.
pub fn contract_ps(
    ps_t: &[Individual],
    cfg: &TransferConfig,
    problem: &DynamicProblem,
    t_new: usize,
    rng: &mut RandomSource,
) -> Result<Vec<Individual>> {
    if ps_t.is_empty() {
        return Err(Error::EmptyInput("PS_t"));
    }
    let n = cfg.population_size;
    let reevaluated = reevaluate(ps_t, problem, t_new)?;
    let f: Vec<&[f64]> = reevaluated.iter().map(|p| p.f.as_slice()).collect();
    let mut p_non: Vec<Individual> = nondominated_indices(&f)
        .into_iter()
        .map(|i| reevaluated[i].clone())
        .collect();
    if p_non.len() > n {
        p_non = even_objective_selection(&p_non, n);
    }
    let mut p_tr = p_non.clone();

    let nf: Vec<&[f64]> = p_non.iter().map(|p| p.f.as_slice()).collect();
    let extremes = extreme_points(&nf)?;
    let mut seen = Vec::new();
    for e in extremes {
        if seen.contains(&e) {
            continue;
        }
        seen.push(e);
        if p_tr.len() >= n {
            break;
        }
        let Some(nb) = nearest_neighbour(&p_non, e) else {
            continue;
        };
        if let Some(x) = spread_solution(&p_non[e].x, &p_non[nb].x, problem.lower(), problem.upper()) {
            p_tr.push(evaluated(x, problem, t_new)?);
        }
    }

    let pool = p_tr.clone();
    while p_tr.len() < n {
        let x = if pool.len() < 2 {
            polynomial_mutation(&pool[0].x, problem.lower(), problem.upper(), &cfg.variation, rng)
        } else {
            let (a, b) = rng.distinct_pair(pool.len());
            let r = rng.unit_open_closed();
            extrapolate(&pool[a].x, &pool[b].x, r, problem.lower(), problem.upper())
        };
        p_tr.push(evaluated(x, problem, t_new)?);
    }
    Ok(p_tr)
}
