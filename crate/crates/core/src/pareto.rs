//! Pareto dominance, nondominated sorting and extreme points (minimization).

use crate::error::{Error, Result};

/// `a` dominates `b`: no worse in every objective and strictly better in one.
///
/// Panics if the vectors differ in length; use [`checked_dominates`] when the
/// lengths are not already known to agree.
pub fn dominates(a: &[f64], b: &[f64]) -> bool {
    assert_eq!(a.len(), b.len(), "dominance between vectors of different length");
    let mut strictly_better = false;
    for (&ai, &bi) in a.iter().zip(b) {
        if ai > bi {
            return false;
        }
        if ai < bi {
            strictly_better = true;
        }
    }
    strictly_better
}

pub fn checked_dominates(a: &[f64], b: &[f64]) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            actual: b.len(),
        });
    }
    Ok(dominates(a, b))
}

/// Fast nondominated sorting. Fronts partition `0..points.len()`; indices
/// within a front are ascending.
pub fn nondominated_sort<P: AsRef<[f64]>>(points: &[P]) -> Vec<Vec<usize>> {
    let n = points.len();
    if n == 0 {
        return Vec::new();
    }
    let mut dominated_by_count = vec![0usize; n];
    let mut dominates_list: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in (i + 1)..n {
            let (pi, pj) = (points[i].as_ref(), points[j].as_ref());
            if dominates(pi, pj) {
                dominates_list[i].push(j);
                dominated_by_count[j] += 1;
            } else if dominates(pj, pi) {
                dominates_list[j].push(i);
                dominated_by_count[i] += 1;
            }
        }
    }

    let mut fronts = Vec::new();
    let mut current: Vec<usize> = (0..n).filter(|&i| dominated_by_count[i] == 0).collect();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &i in &current {
            for &j in &dominates_list[i] {
                dominated_by_count[j] -= 1;
                if dominated_by_count[j] == 0 {
                    next.push(j);
                }
            }
        }
        next.sort_unstable();
        fronts.push(current);
        current = next;
    }
    fronts
}

/// Rank (front index) of every point.
pub fn front_ranks<P: AsRef<[f64]>>(points: &[P]) -> Vec<usize> {
    let mut ranks = vec![0; points.len()];
    for (r, front) in nondominated_sort(points).iter().enumerate() {
        for &i in front {
            ranks[i] = r;
        }
    }
    ranks
}

/// Indices of the points not dominated by any other point.
pub fn nondominated_indices<P: AsRef<[f64]>>(points: &[P]) -> Vec<usize> {
    (0..points.len())
        .filter(|&i| {
            let pi = points[i].as_ref();
            !points.iter().any(|q| dominates(q.as_ref(), pi))
        })
        .collect()
}

/// For each objective, the index of the point with the largest value; ties go
/// to the lowest index.
pub fn extreme_points<P: AsRef<[f64]>>(points: &[P]) -> Result<Vec<usize>> {
    let first = points.first().ok_or(Error::EmptyInput("extreme_points"))?;
    let m = first.as_ref().len();
    let mut best = vec![0usize; m];
    for (i, p) in points.iter().enumerate().skip(1) {
        let p = p.as_ref();
        if p.len() != m {
            return Err(Error::LengthMismatch {
                expected: m,
                actual: p.len(),
            });
        }
        for k in 0..m {
            if p[k] > points[best[k]].as_ref()[k] {
                best[k] = i;
            }
        }
    }
    Ok(best)
}
