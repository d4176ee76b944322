//! Simplex-lattice weight vectors and subregion association.

/// Weight vectors on the unit simplex.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVectorSet {
    pub vectors: Vec<Vec<f64>>,
}

impl WeightVectorSet {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn num_objectives(&self) -> usize {
        self.vectors.first().map_or(0, Vec::len)
    }

    /// The smallest lattice with at least `population` vectors. Seven or more
    /// objectives use a boundary layer plus an inner layer shrunk halfway
    /// towards the centroid.
    pub fn for_population(m: usize, population: usize) -> Self {
        if m >= 7 {
            let mut best: Option<(usize, usize, usize)> = None;
            for outer in 1..=population {
                let outer_count = lattice_size(m, outer);
                if outer_count >= population {
                    if best.is_none_or(|(_, _, c)| outer_count < c) {
                        best = Some((outer, 0, outer_count));
                    }
                    break;
                }
                for inner in 1..=outer {
                    let total = outer_count + lattice_size(m, inner);
                    if total >= population {
                        if best.is_none_or(|(_, _, c)| total < c) {
                            best = Some((outer, inner, total));
                        }
                        break;
                    }
                }
            }
            let (outer, inner, _) = best.expect("a lattice always reaches the population size");
            let mut vectors = das_dennis_weights(m, outer).vectors;
            if inner > 0 {
                let shrink = 0.5;
                vectors.extend(das_dennis_weights(m, inner).vectors.into_iter().map(|w| {
                    w.into_iter()
                        .map(|v| (1.0 - shrink) / m as f64 + shrink * v)
                        .collect::<Vec<_>>()
                }));
            }
            return Self { vectors };
        }
        let mut h = 1;
        while lattice_size(m, h) < population {
            h += 1;
        }
        das_dennis_weights(m, h)
    }
}

/// `C(h + m - 1, m - 1)`, saturating.
pub(crate) fn lattice_size(m: usize, h: usize) -> usize {
    let mut result: u128 = 1;
    for i in 1..m as u128 {
        result = result * (h as u128 + i) / i;
        if result > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    result as usize
}

/// Every point of the unit simplex in `m` dimensions with spacing `1/h`.
pub fn das_dennis_weights(m: usize, h: usize) -> WeightVectorSet {
    assert!(m >= 1 && h >= 1, "need m >= 1 and h >= 1");
    let mut vectors = Vec::with_capacity(lattice_size(m, h));
    let mut current = vec![0usize; m];
    fill(&mut vectors, &mut current, 0, h, h);
    WeightVectorSet { vectors }
}

fn fill(out: &mut Vec<Vec<f64>>, current: &mut [usize], depth: usize, left: usize, h: usize) {
    let m = current.len();
    if depth == m - 1 {
        current[depth] = left;
        out.push(current.iter().map(|&c| c as f64 / h as f64).collect());
        return;
    }
    for v in 0..=left {
        current[depth] = v;
        fill(out, current, depth + 1, left - v, h);
    }
}

/// Scale each objective to `[0, 1]` by the set's own min/max. An objective
/// with zero range maps to 0.
pub fn normalize_objectives<P: AsRef<[f64]>>(points: &[P]) -> Vec<Vec<f64>> {
    let Some(first) = points.first() else {
        return Vec::new();
    };
    let m = first.as_ref().len();
    let mut lo = vec![f64::INFINITY; m];
    let mut hi = vec![f64::NEG_INFINITY; m];
    for p in points {
        for (k, &v) in p.as_ref().iter().enumerate() {
            lo[k] = lo[k].min(v);
            hi[k] = hi[k].max(v);
        }
    }
    points
        .iter()
        .map(|p| {
            p.as_ref()
                .iter()
                .enumerate()
                .map(|(k, &v)| {
                    let range = hi[k] - lo[k];
                    if range > 0.0 {
                        (v - lo[k]) / range
                    } else {
                        0.0
                    }
                })
                .collect()
        })
        .collect()
}

/// Distance from `p` to the ray through the origin along `w`.
pub fn perpendicular_distance(p: &[f64], w: &[f64]) -> f64 {
    let ww: f64 = w.iter().map(|v| v * v).sum();
    if ww == 0.0 {
        return p.iter().map(|v| v * v).sum::<f64>().sqrt();
    }
    let scale = p.iter().zip(w).map(|(a, b)| a * b).sum::<f64>() / ww;
    p.iter()
        .zip(w)
        .map(|(a, b)| (a - scale * b).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// Subregion index of each point: the weight vector whose ray is closest to
/// the point's normalized objective vector. Ties go to the lower index.
pub fn associate_subregions<P: AsRef<[f64]>>(points: &[P], weights: &WeightVectorSet) -> Vec<usize> {
    normalize_objectives(points)
        .iter()
        .map(|p| nearest_ray_index(p, weights))
        .collect()
}

/// Index of the weight vector whose ray is closest to an already normalized point.
pub fn nearest_ray_index(p: &[f64], weights: &WeightVectorSet) -> usize {
    let mut best = 0;
    let mut best_d = f64::INFINITY;
    for (j, w) in weights.vectors.iter().enumerate() {
        let d = perpendicular_distance(p, w);
        if d < best_d {
            best_d = d;
            best = j;
        }
    }
    best
}
