//! Quality indicators measured against a sampled true Pareto front.

mod hypervolume;

pub use hypervolume::{hypervolume, hypervolume_exact, hypervolume_monte_carlo, DEFAULT_MC_SAMPLES};

use crate::error::{Error, Result};
use crate::problems::ReferenceFront;

/// Reference point coordinate after dividing objectives by the front's nadir.
pub const NORMALIZED_REFERENCE: f64 = 1.1;

/// When a snapshot was taken relative to an environment change.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Phase {
    /// First generation of a new environment, right after the change response.
    FirstAfterChange,
    /// Last generation of an environment, just before the next change.
    LastBeforeChange,
}

impl Phase {
    pub fn as_str(self) -> &'static str {
        match self {
            Phase::FirstAfterChange => "first",
            Phase::LastBeforeChange => "last",
        }
    }
}

impl std::str::FromStr for Phase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "first" => Ok(Phase::FirstAfterChange),
            "last" => Ok(Phase::LastBeforeChange),
            other => Err(Error::InvalidConfig(format!("unknown phase `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricSnapshot {
    pub t: usize,
    pub phase: Phase,
    pub seed: u64,
    pub hv: f64,
    pub gd: f64,
    pub ms: f64,
}

/// HV after dividing every objective by the front's nadir, with reference
/// point 1.1 in every objective.
pub fn normalized_hypervolume<P: AsRef<[f64]>>(
    points: &[P],
    front: &ReferenceFront,
    samples: usize,
    seed: u64,
) -> f64 {
    let nadir = front.nadir();
    let scaled: Vec<Vec<f64>> = points
        .iter()
        .map(|p| {
            p.as_ref()
                .iter()
                .zip(&nadir)
                .map(|(v, n)| if *n > 0.0 { v / n } else { *v })
                .collect()
        })
        .collect();
    hypervolume(&scaled, &vec![NORMALIZED_REFERENCE; nadir.len()], samples, seed)
}

/// `sqrt(sum d_i^2) / |points|` with `d_i` the distance from point `i` to its
/// nearest reference point.
pub fn generational_distance<P: AsRef<[f64]>>(points: &[P], front: &ReferenceFront) -> Result<f64> {
    if points.is_empty() {
        return Err(Error::EmptyInput("points"));
    }
    if front.is_empty() {
        return Err(Error::EmptyInput("reference front"));
    }
    let sum: f64 = points
        .iter()
        .map(|p| {
            front
                .points
                .iter()
                .map(|r| r.iter().zip(p.as_ref()).map(|(a, b)| (a - b).powi(2)).sum::<f64>())
                .fold(f64::INFINITY, f64::min)
        })
        .sum();
    Ok(sum.sqrt() / points.len() as f64)
}

/// Maximum spread normalized by the reference front's extent, in `[0, 1]`.
/// Objectives where the reference has zero extent are left out.
pub fn maximum_spread<P: AsRef<[f64]>>(points: &[P], front: &ReferenceFront) -> Result<f64> {
    if points.is_empty() {
        return Err(Error::EmptyInput("points"));
    }
    if front.is_empty() {
        return Err(Error::EmptyInput("reference front"));
    }
    let ideal = front.ideal();
    let nadir = front.nadir();
    let mut sum = 0.0;
    let mut used = 0usize;
    for k in 0..ideal.len() {
        let extent = nadir[k] - ideal[k];
        if extent <= 0.0 {
            log::warn!("reference front has zero extent in objective {k}; left out of MS");
            continue;
        }
        let lo = points.iter().map(|p| p.as_ref()[k]).fold(f64::INFINITY, f64::min);
        let hi = points.iter().map(|p| p.as_ref()[k]).fold(f64::NEG_INFINITY, f64::max);
        let overlap = (hi.min(nadir[k]) - lo.max(ideal[k])).max(0.0) / extent;
        sum += overlap * overlap;
        used += 1;
    }
    if used == 0 {
        return Ok(0.0);
    }
    Ok((sum / used as f64).sqrt())
}
