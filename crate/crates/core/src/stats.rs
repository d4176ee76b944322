//! Nonparametric tests for comparing algorithms: Friedman with the Nemenyi
//! critical difference, and the two-sample Wilcoxon rank-sum test.

use statrs::distribution::{ChiSquared, ContinuousCDF};
use statrs::function::erf::erfc;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    LargerBetter,
    SmallerBetter,
}

/// Rows are observations, columns are algorithms.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservationMatrix {
    rows: Vec<Vec<f64>>,
}

impl ObservationMatrix {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let Some(first) = rows.first() else {
            return Err(Error::EmptyInput("observation matrix"));
        };
        let k = first.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != k) {
            return Err(Error::LengthMismatch {
                expected: k,
                actual: bad.len(),
            });
        }
        if rows.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::InvalidConfig("observation matrix has a non-finite cell".into()));
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn num_observations(&self) -> usize {
        self.rows.len()
    }

    pub fn num_algorithms(&self) -> usize {
        self.rows[0].len()
    }
}

/// Ranks starting at 1 with ties sharing their average rank.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        let rank = (i + j) as f64 / 2.0 + 1.0;
        for &idx in &order[i..=j] {
            ranks[idx] = rank;
        }
        i = j + 1;
    }
    ranks
}

/// `sum(t^3 - t)` over groups of tied values.
fn tie_term(values: &[f64]) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut total = 0.0;
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i;
        while j + 1 < sorted.len() && sorted[j + 1] == sorted[i] {
            j += 1;
        }
        let t = (j - i + 1) as f64;
        total += t * t * t - t;
        i = j + 1;
    }
    total
}

#[derive(Debug, Clone, PartialEq)]
pub struct FriedmanResult {
    pub statistic: f64,
    pub p_value: f64,
    /// Mean rank per algorithm; rank 1 is the best value in a row.
    pub mean_ranks: Vec<f64>,
}

/// Friedman test with average ranks for ties and the usual tie correction.
pub fn friedman_test(matrix: &ObservationMatrix, direction: Direction) -> Result<FriedmanResult> {
    let n = matrix.num_observations();
    let k = matrix.num_algorithms();
    if k < 2 || n < 2 {
        return Err(Error::InvalidConfig(format!(
            "Friedman test needs at least 2 algorithms and 2 observations, got {k} and {n}"
        )));
    }
    let mut rank_sums = vec![0.0; k];
    let mut ties = 0.0;
    for row in matrix.rows() {
        let oriented: Vec<f64> = match direction {
            Direction::SmallerBetter => row.clone(),
            Direction::LargerBetter => row.iter().map(|v| -v).collect(),
        };
        for (sum, r) in rank_sums.iter_mut().zip(average_ranks(&oriented)) {
            *sum += r;
        }
        ties += tie_term(row);
    }
    let (nf, kf) = (n as f64, k as f64);
    let mean_ranks: Vec<f64> = rank_sums.iter().map(|s| s / nf).collect();
    let correction = 1.0 - ties / (nf * kf * (kf * kf - 1.0));
    if correction <= 1e-12 {
        return Ok(FriedmanResult {
            statistic: 0.0,
            p_value: 1.0,
            mean_ranks,
        });
    }
    let sum_sq: f64 = rank_sums.iter().map(|s| s * s).sum();
    let raw = 12.0 / (nf * kf * (kf + 1.0)) * sum_sq - 3.0 * nf * (kf + 1.0);
    let statistic = (raw / correction).max(0.0);
    let chi = ChiSquared::new(kf - 1.0).expect("positive degrees of freedom");
    Ok(FriedmanResult {
        statistic,
        p_value: chi.sf(statistic),
        mean_ranks,
    })
}

/// Two-tailed Nemenyi critical values at alpha = 0.05 for k = 2..=20.
const Q_005: [f64; 19] = [
    1.960, 2.343, 2.569, 2.728, 2.850, 2.949, 3.031, 3.102, 3.164, 3.219, 3.268, 3.313, 3.354, 3.391,
    3.426, 3.458, 3.489, 3.517, 3.544,
];

/// Nemenyi critical difference `q_alpha(k) * sqrt(k(k+1) / 6n)`. Only
/// alpha = 0.05 is tabulated.
pub fn nemenyi_cd(k: usize, n: usize, alpha: f64) -> Result<f64> {
    if (alpha - 0.05).abs() > 1e-12 {
        return Err(Error::InvalidConfig(format!("no Nemenyi table for alpha={alpha}")));
    }
    if !(2..=20).contains(&k) {
        return Err(Error::UnsupportedTableSize(k));
    }
    if n == 0 {
        return Err(Error::EmptyInput("observations"));
    }
    let (kf, nf) = (k as f64, n as f64);
    Ok(Q_005[k - 2] * (kf * (kf + 1.0) / (6.0 * nf)).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankSumResult {
    /// Standardized rank sum of the first sample.
    pub z: f64,
    pub p_value: f64,
    pub significant: bool,
}

/// Two-sided Wilcoxon rank-sum test, normal approximation with tie
/// correction and no continuity correction.
pub fn wilcoxon_rank_sum(a: &[f64], b: &[f64], alpha: f64) -> Result<RankSumResult> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyInput("rank-sum sample"));
    }
    let combined: Vec<f64> = a.iter().chain(b).copied().collect();
    let ranks = average_ranks(&combined);
    let (n1, n2) = (a.len() as f64, b.len() as f64);
    let total = n1 + n2;
    let r1: f64 = ranks[..a.len()].iter().sum();
    let mean = n1 * (total + 1.0) / 2.0;
    let variance = n1 * n2 / 12.0 * ((total + 1.0) - tie_term(&combined) / (total * (total - 1.0)));
    if variance <= 0.0 {
        return Ok(RankSumResult {
            z: 0.0,
            p_value: 1.0,
            significant: false,
        });
    }
    let z = (r1 - mean) / variance.sqrt();
    let p_value = erfc(z.abs() / std::f64::consts::SQRT_2).min(1.0);
    Ok(RankSumResult {
        z,
        p_value,
        significant: p_value < alpha,
    })
}
