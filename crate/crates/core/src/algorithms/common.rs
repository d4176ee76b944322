use crate::error::Result;
use crate::operators::{polynomial_mutation, sbx_crossover, VariationConfig};
use crate::problems::DynamicProblem;
use crate::random::RandomSource;
use crate::types::Individual;

/// `n` uniform random solutions evaluated in environment `t`.
pub fn random_population(
    problem: &DynamicProblem,
    n: usize,
    t: usize,
    rng: &mut RandomSource,
) -> Result<Vec<Individual>> {
    (0..n)
        .map(|_| {
            let x = problem.random_point(rng);
            let f = problem.evaluate(&x, t)?;
            Ok(Individual::new(x, f, t))
        })
        .collect()
}

/// Same decision vectors, objectives recomputed in environment `t`.
pub fn reevaluate(pop: &[Individual], problem: &DynamicProblem, t: usize) -> Result<Vec<Individual>> {
    pop.iter()
        .map(|p| Ok(Individual::new(p.x.clone(), problem.evaluate(&p.x, t)?, t)))
        .collect()
}

/// SBX followed by polynomial mutation on both children.
pub(crate) fn mate(
    a: &[f64],
    b: &[f64],
    problem: &DynamicProblem,
    cfg: &VariationConfig,
    rng: &mut RandomSource,
) -> (Vec<f64>, Vec<f64>) {
    let (lo, hi) = (problem.lower(), problem.upper());
    let (c1, c2) = sbx_crossover(a, b, lo, hi, cfg, rng);
    (
        polynomial_mutation(&c1, lo, hi, cfg, rng),
        polynomial_mutation(&c2, lo, hi, cfg, rng),
    )
}

/// `n` offspring from parent pairs chosen by `pick`.
pub(crate) fn offspring<F>(
    n: usize,
    problem: &DynamicProblem,
    t: usize,
    cfg: &VariationConfig,
    rng: &mut RandomSource,
    mut pick: F,
) -> Result<Vec<Individual>>
where
    F: FnMut(&mut RandomSource) -> (Vec<f64>, Vec<f64>),
{
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let (a, b) = pick(rng);
        let (c1, c2) = mate(&a, &b, problem, cfg, rng);
        for x in [c1, c2] {
            if out.len() < n {
                let f = problem.evaluate(&x, t)?;
                out.push(Individual::new(x, f, t));
            }
        }
    }
    Ok(out)
}
