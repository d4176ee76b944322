use crate::random::RandomSource;

/// Monte Carlo sample count used for four or more objectives.
pub const DEFAULT_MC_SAMPLES: usize = 100_000;

fn clip<P: AsRef<[f64]>>(points: &[P], reference: &[f64]) -> Vec<Vec<f64>> {
    points
        .iter()
        .map(|p| p.as_ref())
        .filter(|p| p.iter().zip(reference).all(|(a, r)| a < r))
        .map(|p| p.to_vec())
        .collect()
}

/// Exact hypervolume of two-objective points by a sweep over the first
/// objective.
fn hv2(points: &mut [Vec<f64>], reference: &[f64]) -> f64 {
    points.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    let mut volume = 0.0;
    let mut best_y = reference[1];
    for p in points.iter() {
        if p[1] < best_y {
            volume += (reference[0] - p[0]) * (best_y - p[1]);
            best_y = p[1];
        }
    }
    volume
}

/// Exact hypervolume by slicing along the last objective. Two objectives use
/// the sweep directly; higher dimensions recurse. Exponential in the number
/// of objectives, intended for three objectives and for cross-checks.
pub fn hypervolume_exact<P: AsRef<[f64]>>(points: &[P], reference: &[f64]) -> f64 {
    let mut pts = clip(points, reference);
    exact_recursive(&mut pts, reference)
}

fn exact_recursive(points: &mut Vec<Vec<f64>>, reference: &[f64]) -> f64 {
    let m = reference.len();
    if points.is_empty() {
        return 0.0;
    }
    if m == 1 {
        let best = points.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min);
        return reference[0] - best;
    }
    if m == 2 {
        return hv2(points, reference);
    }
    points.sort_by(|a, b| a[m - 1].total_cmp(&b[m - 1]));
    let sub_ref = &reference[..m - 1];
    let mut volume = 0.0;
    let mut active: Vec<Vec<f64>> = Vec::with_capacity(points.len());
    for i in 0..points.len() {
        active.push(points[i][..m - 1].to_vec());
        let top = if i + 1 < points.len() {
            points[i + 1][m - 1]
        } else {
            reference[m - 1]
        };
        let depth = top - points[i][m - 1];
        if depth > 0.0 {
            active = nondominated_projection(active);
            volume += depth * exact_recursive(&mut active.clone(), sub_ref);
        }
    }
    volume
}

fn nondominated_projection(points: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    let keep: Vec<bool> = (0..points.len())
        .map(|i| {
            !points.iter().enumerate().any(|(j, q)| {
                j != i
                    && q.iter().zip(&points[i]).all(|(a, b)| a <= b)
                    && (q != &points[i] || j < i)
            })
        })
        .collect();
    points
        .into_iter()
        .zip(keep)
        .filter_map(|(p, k)| k.then_some(p))
        .collect()
}

/// Monte Carlo hypervolume estimate with `samples` uniform draws in the box
/// spanned by the points' ideal corner and `reference`.
pub fn hypervolume_monte_carlo<P: AsRef<[f64]>>(
    points: &[P],
    reference: &[f64],
    samples: usize,
    rng: &mut RandomSource,
) -> f64 {
    let pts = clip(points, reference);
    if pts.is_empty() || samples == 0 {
        return 0.0;
    }
    let m = reference.len();
    let lower: Vec<f64> = (0..m)
        .map(|k| pts.iter().map(|p| p[k]).fold(f64::INFINITY, f64::min))
        .collect();
    let box_volume: f64 = lower.iter().zip(reference).map(|(l, r)| r - l).product();
    let mut sample = vec![0.0; m];
    let mut hits = 0usize;
    for _ in 0..samples {
        for k in 0..m {
            sample[k] = rng.uniform(lower[k], reference[k]);
        }
        if pts.iter().any(|p| p.iter().zip(&sample).all(|(a, s)| a <= s)) {
            hits += 1;
        }
    }
    box_volume * hits as f64 / samples as f64
}

/// Exact hypervolume for up to three objectives, Monte Carlo with `samples`
/// draws seeded by `seed` beyond that.
pub fn hypervolume<P: AsRef<[f64]>>(points: &[P], reference: &[f64], samples: usize, seed: u64) -> f64 {
    if reference.len() <= 3 {
        hypervolume_exact(points, reference)
    } else {
        hypervolume_monte_carlo(points, reference, samples, &mut RandomSource::new(seed))
    }
}
