use crate::operators::{nearest_ray_index, normalize_objectives, WeightVectorSet};
use crate::pareto::nondominated_sort;
use crate::types::Individual;

/// One truncation step of [`ca_update_traced`].
#[derive(Debug, Clone, PartialEq)]
pub struct Removal {
    /// Index into the merged population `ca ++ offspring`.
    pub member: usize,
    pub subregion: usize,
    pub indicator: f64,
    /// Occupancy of `subregion` just before the removal.
    pub crowding: usize,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct CaTrace {
    /// Indices into the merged population that survived.
    pub kept: Vec<usize>,
    /// Subregion of every merged member; only filled when truncating the
    /// first front.
    pub subregions: Vec<usize>,
    /// Convergence indicator of every merged member.
    pub indicators: Vec<f64>,
    pub first_front: Vec<usize>,
    pub removals: Vec<Removal>,
}

/// Sum of objectives after min/max normalization over the whole set.
pub fn convergence_indicators<P: AsRef<[f64]>>(points: &[P]) -> Vec<f64> {
    normalize_objectives(points)
        .iter()
        .map(|p| p.iter().sum())
        .collect()
}

/// Merge `ca` and `offspring` and keep `n` members.
pub fn ca_update(ca: &[Individual], offspring: &[Individual], weights: &WeightVectorSet, n: usize) -> Vec<Individual> {
    ca_update_traced(ca, offspring, weights, n).0
}

/// [`ca_update`] plus a record of every decision it made.
///
/// If the first nondominated front fits, fronts are added in order and the
/// front that overflows is cut by best convergence indicator. Otherwise the
/// first front is truncated: members are associated with weight vectors and,
/// repeatedly, the most crowded subregion loses its worst-indicator member.
/// When several subregions tie for most crowded, the worst member across all
/// of them goes.
pub fn ca_update_traced(
    ca: &[Individual],
    offspring: &[Individual],
    weights: &WeightVectorSet,
    n: usize,
) -> (Vec<Individual>, CaTrace) {
    let merged: Vec<&Individual> = ca.iter().chain(offspring).collect();
    let f: Vec<&[f64]> = merged.iter().map(|p| p.f.as_slice()).collect();
    let fronts = nondominated_sort(&f);
    let normalized = normalize_objectives(&f);
    let indicators: Vec<f64> = normalized.iter().map(|p| p.iter().sum()).collect();
    let mut trace = CaTrace {
        indicators,
        first_front: fronts.first().cloned().unwrap_or_default(),
        ..CaTrace::default()
    };

    if trace.first_front.len() <= n {
        let mut kept = Vec::with_capacity(n);
        for front in &fronts {
            if kept.len() + front.len() <= n {
                kept.extend_from_slice(front);
            } else {
                let mut rest = front.clone();
                rest.sort_by(|&a, &b| trace.indicators[a].total_cmp(&trace.indicators[b]).then(a.cmp(&b)));
                kept.extend(rest.into_iter().take(n - kept.len()));
            }
            if kept.len() == n {
                break;
            }
        }
        trace.kept = kept;
    } else {
        trace.subregions = normalized.iter().map(|p| nearest_ray_index(p, weights)).collect();
        let mut alive = trace.first_front.clone();
        let mut counts = vec![0usize; weights.len()];
        for &i in &alive {
            counts[trace.subregions[i]] += 1;
        }
        while alive.len() > n {
            let max_count = alive.iter().map(|&i| counts[trace.subregions[i]]).max().unwrap();
            let (pos, &victim) = alive
                .iter()
                .enumerate()
                .filter(|(_, &i)| counts[trace.subregions[i]] == max_count)
                .max_by(|(_, &a), (_, &b)| trace.indicators[a].total_cmp(&trace.indicators[b]).then(a.cmp(&b)))
                .unwrap();
            let region = trace.subregions[victim];
            trace.removals.push(Removal {
                member: victim,
                subregion: region,
                indicator: trace.indicators[victim],
                crowding: counts[region],
            });
            counts[region] -= 1;
            alive.remove(pos);
        }
        trace.kept = alive;
    }
    let out = trace.kept.iter().map(|&i| merged[i].clone()).collect();
    (out, trace)
}
