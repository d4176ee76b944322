use crate::operators::normalize_objectives;
use crate::pareto::extreme_points;
use crate::types::Individual;

/// Indices of `count` members of `pop` spread evenly in objective space.
///
/// Two objectives: sort by the first objective and take evenly spaced ranks.
/// More objectives: greedy max-min distance in normalized objective space,
/// seeded with the extreme points. When `count` exceeds `pop.len()` the whole
/// population is returned followed by repeats in pick order.
pub fn even_selection_indices(pop: &[Individual], count: usize) -> Vec<usize> {
    assert!(!pop.is_empty(), "even selection from an empty population");
    if count == 0 {
        return Vec::new();
    }
    let f: Vec<&[f64]> = pop.iter().map(|p| p.f.as_slice()).collect();
    let extremes = extreme_points(&f).expect("nonempty population");
    if count == 1 {
        return vec![extremes[0]];
    }
    let order = if pop[0].f.len() == 2 {
        two_objective_order(pop, &extremes, count.min(pop.len()))
    } else {
        max_min_order(pop, &extremes, count.min(pop.len()))
    };
    order.iter().cycle().take(count).copied().collect()
}

/// Clones of the members chosen by [`even_selection_indices`].
pub fn even_objective_selection(pop: &[Individual], count: usize) -> Vec<Individual> {
    even_selection_indices(pop, count)
        .into_iter()
        .map(|i| pop[i].clone())
        .collect()
}

fn two_objective_order(pop: &[Individual], extremes: &[usize], count: usize) -> Vec<usize> {
    let mut sorted: Vec<usize> = (0..pop.len()).collect();
    sorted.sort_by(|&a, &b| pop[a].f[0].total_cmp(&pop[b].f[0]).then(a.cmp(&b)));
    let len = sorted.len();
    let mut picks: Vec<usize> = (0..count)
        .map(|i| {
            let pos = (i as f64 * (len - 1) as f64 / (count - 1) as f64).round() as usize;
            sorted[pos]
        })
        .collect();
    // Pin the ends to the canonical extreme indices so that ties on the first
    // objective cannot swap them for an equal-valued duplicate.
    picks[0] = extremes[1];
    picks[count - 1] = extremes[0];
    if count == len {
        // Full selection must be a permutation.
        let mut seen = vec![false; len];
        let mut out = Vec::with_capacity(len);
        for &i in picks.iter().chain(sorted.iter()) {
            if !seen[i] {
                seen[i] = true;
                out.push(i);
            }
        }
        return out;
    }
    picks
}

fn max_min_order(pop: &[Individual], extremes: &[usize], count: usize) -> Vec<usize> {
    let norm = normalize_objectives(&pop.iter().map(|p| p.f.as_slice()).collect::<Vec<_>>());
    let mut picks: Vec<usize> = Vec::with_capacity(count);
    for &e in extremes {
        if !picks.contains(&e) && picks.len() < count {
            picks.push(e);
        }
    }
    let dist = |a: usize, b: usize| -> f64 {
        norm[a]
            .iter()
            .zip(&norm[b])
            .map(|(x, y)| (x - y).powi(2))
            .sum::<f64>()
            .sqrt()
    };
    let mut chosen = vec![false; pop.len()];
    let mut min_d = vec![f64::INFINITY; pop.len()];
    for &p in &picks {
        chosen[p] = true;
    }
    for i in 0..pop.len() {
        for &p in &picks {
            min_d[i] = min_d[i].min(dist(i, p));
        }
    }
    while picks.len() < count {
        let mut best = usize::MAX;
        let mut best_d = f64::NEG_INFINITY;
        for i in 0..pop.len() {
            if !chosen[i] && min_d[i] > best_d {
                best_d = min_d[i];
                best = i;
            }
        }
        chosen[best] = true;
        picks.push(best);
        for i in 0..pop.len() {
            min_d[i] = min_d[i].min(dist(i, best));
        }
    }
    picks
}
