//! Dynamic benchmark problems whose objective count follows a schedule.
//!
//! F1-F4 are DTLZ1-DTLZ4 and WFG1-WFG9 are the WFG suite, each evaluated
//! with the objective count of the requested environment. The decision
//! space is fixed for the whole run.

mod dtlz;
mod front;
mod schedule;
pub mod wfg;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub use front::{sample_true_pf, ReferenceFront};
pub use schedule::{ChangeSchedule, EnvironmentPosition, ObjectiveSequence, MAX_OBJECTIVES, MIN_OBJECTIVES};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProblemKind {
    F1,
    F2,
    F3,
    F4,
    Wfg(u8),
}

impl ProblemKind {
    pub const ALL: [ProblemKind; 13] = [
        ProblemKind::F1,
        ProblemKind::F2,
        ProblemKind::F3,
        ProblemKind::F4,
        ProblemKind::Wfg(1),
        ProblemKind::Wfg(2),
        ProblemKind::Wfg(3),
        ProblemKind::Wfg(4),
        ProblemKind::Wfg(5),
        ProblemKind::Wfg(6),
        ProblemKind::Wfg(7),
        ProblemKind::Wfg(8),
        ProblemKind::Wfg(9),
    ];

    pub fn is_dtlz(self) -> bool {
        !matches!(self, ProblemKind::Wfg(_))
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProblemKind::F1 => write!(f, "F1"),
            ProblemKind::F2 => write!(f, "F2"),
            ProblemKind::F3 => write!(f, "F3"),
            ProblemKind::F4 => write!(f, "F4"),
            ProblemKind::Wfg(i) => write!(f, "WFG{i}"),
        }
    }
}

impl FromStr for ProblemKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let upper = s.trim().to_ascii_uppercase();
        let kind = match upper.as_str() {
            "F1" | "DTLZ1" => ProblemKind::F1,
            "F2" | "DTLZ2" => ProblemKind::F2,
            "F3" | "DTLZ3" => ProblemKind::F3,
            "F4" | "DTLZ4" => ProblemKind::F4,
            other => match other.strip_prefix("WFG").and_then(|d| d.parse::<u8>().ok()) {
                Some(i @ 1..=9) => ProblemKind::Wfg(i),
                _ => return Err(Error::UnsupportedProblem(s.to_string())),
            },
        };
        Ok(kind)
    }
}

/// Sizes of the decision space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProblemDimensions {
    /// Largest objective count the DTLZ decision vector is sized for.
    pub dtlz_max_objectives: usize,
    /// DTLZ distance-variable count; `None` uses 5 for F1 and 10 otherwise.
    pub dtlz_k: Option<usize>,
    pub wfg_position: usize,
    pub wfg_distance: usize,
}

impl Default for ProblemDimensions {
    fn default() -> Self {
        Self {
            dtlz_max_objectives: MAX_OBJECTIVES,
            dtlz_k: None,
            wfg_position: 60,
            wfg_distance: 10,
        }
    }
}

/// A benchmark together with its objective count per environment index.
#[derive(Debug, Clone, PartialEq)]
pub struct DynamicProblem {
    kind: ProblemKind,
    dims: ProblemDimensions,
    lower: Vec<f64>,
    upper: Vec<f64>,
    objective_counts: Vec<usize>,
}

impl DynamicProblem {
    pub fn new(kind: ProblemKind, objective_counts: Vec<usize>) -> Result<Self> {
        Self::with_dimensions(kind, objective_counts, ProblemDimensions::default())
    }

    pub fn for_schedule(kind: ProblemKind, schedule: &ChangeSchedule) -> Result<Self> {
        Self::new(kind, schedule.segments().to_vec())
    }

    pub fn with_dimensions(
        kind: ProblemKind,
        objective_counts: Vec<usize>,
        dims: ProblemDimensions,
    ) -> Result<Self> {
        if objective_counts.is_empty() {
            return Err(Error::InvalidConfig("no objective counts".into()));
        }
        let n = match kind {
            ProblemKind::Wfg(i) => {
                if dims.wfg_position == 0 || dims.wfg_distance == 0 {
                    return Err(Error::InvalidConfig("WFG needs k, l > 0".into()));
                }
                if matches!(i, 2 | 3) && !dims.wfg_distance.is_multiple_of(2) {
                    return Err(Error::InvalidConfig("WFG2/WFG3 need an even l".into()));
                }
                dims.wfg_position + dims.wfg_distance
            }
            _ => {
                let k = dims.dtlz_k.unwrap_or(if kind == ProblemKind::F1 { 5 } else { 10 });
                dims.dtlz_max_objectives + k - 1
            }
        };
        for &m in &objective_counts {
            if m < MIN_OBJECTIVES {
                return Err(Error::InvalidConfig(format!("objective count {m} < 2")));
            }
            match kind {
                ProblemKind::Wfg(_) if !dims.wfg_position.is_multiple_of(m - 1) => {
                    return Err(Error::InvalidConfig(format!(
                        "WFG k={} not divisible by M-1={}",
                        dims.wfg_position,
                        m - 1
                    )));
                }
                ProblemKind::Wfg(_) => {}
                _ if m > dims.dtlz_max_objectives => {
                    return Err(Error::InvalidConfig(format!(
                        "DTLZ decision vector sized for at most {} objectives",
                        dims.dtlz_max_objectives
                    )));
                }
                _ => {}
            }
        }
        let (lower, upper) = match kind {
            ProblemKind::Wfg(_) => (vec![0.0; n], (1..=n).map(|i| 2.0 * i as f64).collect()),
            _ => (vec![0.0; n], vec![1.0; n]),
        };
        Ok(Self {
            kind,
            dims,
            lower,
            upper,
            objective_counts,
        })
    }

    pub fn kind(&self) -> ProblemKind {
        self.kind
    }

    pub fn name(&self) -> String {
        self.kind.to_string()
    }

    pub fn dimension(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn dimensions(&self) -> ProblemDimensions {
        self.dims
    }

    pub fn objective_counts(&self) -> &[usize] {
        &self.objective_counts
    }

    pub fn num_environments(&self) -> usize {
        self.objective_counts.len()
    }

    pub fn objectives_at(&self, t: usize) -> Result<usize> {
        self.objective_counts
            .get(t)
            .copied()
            .ok_or(Error::UnknownEnvironment(t))
    }

    pub fn check_bounds(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dimension() {
            return Err(Error::LengthMismatch {
                expected: self.dimension(),
                actual: x.len(),
            });
        }
        for (index, ((&value, &lower), &upper)) in
            x.iter().zip(&self.lower).zip(&self.upper).enumerate()
        {
            if !(lower..=upper).contains(&value) {
                return Err(Error::OutOfBounds {
                    index,
                    value,
                    lower,
                    upper,
                });
            }
        }
        Ok(())
    }

    /// Clamp every component of `x` into the variable bounds.
    pub fn clamp(&self, x: &mut [f64]) {
        for ((v, &lo), &hi) in x.iter_mut().zip(&self.lower).zip(&self.upper) {
            *v = v.clamp(lo, hi);
        }
    }

    /// Objectives of `x` in environment `t`.
    pub fn evaluate(&self, x: &[f64], t: usize) -> Result<Vec<f64>> {
        let m = self.objectives_at(t)?;
        self.check_bounds(x)?;
        Ok(self.evaluate_with_objectives(x, m))
    }

    /// Objectives of `x` for an explicit objective count `m`. `x` must be in
    /// bounds.
    pub fn evaluate_with_objectives(&self, x: &[f64], m: usize) -> Vec<f64> {
        debug_assert!(self.check_bounds(x).is_ok());
        match self.kind {
            ProblemKind::F1 => dtlz::dtlz1(x, m),
            ProblemKind::F2 => dtlz::dtlz2(x, m),
            ProblemKind::F3 => dtlz::dtlz3(x, m),
            ProblemKind::F4 => dtlz::dtlz4(x, m),
            ProblemKind::Wfg(i) => wfg::evaluate(i as usize, x, self.dims.wfg_position, m),
        }
    }

    /// Uniform random point in the decision space.
    pub fn random_point(&self, rng: &mut crate::random::RandomSource) -> Vec<f64> {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(&lo, &hi)| rng.uniform(lo, hi))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        for kind in ProblemKind::ALL {
            assert_eq!(kind.to_string().parse::<ProblemKind>().unwrap(), kind);
        }
        assert_eq!("dtlz2".parse::<ProblemKind>().unwrap(), ProblemKind::F2);
        assert!("WFG10".parse::<ProblemKind>().is_err());
        assert!("ZDT1".parse::<ProblemKind>().is_err());
    }

    #[test]
    fn decision_dimension_is_fixed() {
        let counts = vec![2, 3, 4, 5, 6, 7];
        assert_eq!(DynamicProblem::new(ProblemKind::F1, counts.clone()).unwrap().dimension(), 11);
        assert_eq!(DynamicProblem::new(ProblemKind::F3, counts.clone()).unwrap().dimension(), 16);
        assert_eq!(DynamicProblem::new(ProblemKind::Wfg(5), counts).unwrap().dimension(), 70);
    }

    #[test]
    fn objective_length_tracks_environment() {
        let counts = vec![2, 3, 4, 5, 6, 7, 5, 3];
        for kind in ProblemKind::ALL {
            let p = DynamicProblem::new(kind, counts.clone()).unwrap();
            let x: Vec<f64> = p.lower().iter().zip(p.upper()).map(|(l, u)| 0.3 * l + 0.7 * u).collect();
            for (t, &m) in counts.iter().enumerate() {
                let f = p.evaluate(&x, t).unwrap();
                assert_eq!(f.len(), m);
                assert!(f.iter().all(|v| v.is_finite()));
            }
            assert_eq!(p.evaluate(&x, counts.len()), Err(Error::UnknownEnvironment(counts.len())));
        }
    }

    #[test]
    fn f2_corner_example() {
        let p = DynamicProblem::new(ProblemKind::F2, vec![2, 3]).unwrap();
        let mut x = vec![0.5; p.dimension()];
        x[0] = 0.0;
        let f = p.evaluate(&x, 0).unwrap();
        assert!((f[0] - 1.0).abs() < 1e-15 && f[1].abs() < 1e-15);
        let f3 = p.evaluate(&vec![0.5; p.dimension()], 1).unwrap();
        let norm: f64 = f3.iter().map(|v| v * v).sum::<f64>().sqrt();
        assert!((norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_out_of_bounds() {
        let p = DynamicProblem::new(ProblemKind::F2, vec![2]).unwrap();
        let mut x = vec![0.5; p.dimension()];
        x[3] = 1.5;
        assert!(matches!(p.evaluate(&x, 0), Err(Error::OutOfBounds { index: 3, .. })));
        assert!(matches!(p.evaluate(&x[..4], 0), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn rejects_unsupported_objective_counts() {
        let dims = ProblemDimensions {
            wfg_position: 4,
            ..ProblemDimensions::default()
        };
        assert!(DynamicProblem::with_dimensions(ProblemKind::Wfg(4), vec![2, 4], dims).is_err());
        let dims = ProblemDimensions {
            wfg_distance: 3,
            ..ProblemDimensions::default()
        };
        assert!(DynamicProblem::with_dimensions(ProblemKind::Wfg(2), vec![2], dims).is_err());
        assert!(DynamicProblem::new(ProblemKind::F1, vec![8]).is_err());
    }

    #[test]
    fn dtlz_optimum_on_front_for_every_m() {
        for kind in [ProblemKind::F1, ProblemKind::F2, ProblemKind::F3, ProblemKind::F4] {
            let counts: Vec<usize> = (2..=7).collect();
            let p = DynamicProblem::new(kind, counts.clone()).unwrap();
            for (t, &m) in counts.iter().enumerate() {
                let mut x = vec![0.5; p.dimension()];
                for (i, v) in x.iter_mut().take(m - 1).enumerate() {
                    *v = (0.17 * (i + 1) as f64) % 1.0;
                }
                let f = p.evaluate(&x, t).unwrap();
                if kind == ProblemKind::F1 {
                    assert!((f.iter().sum::<f64>() - 0.5).abs() < 1e-12);
                } else {
                    let norm: f64 = f.iter().map(|v| v * v).sum::<f64>().sqrt();
                    assert!((norm - 1.0).abs() < 1e-12);
                }
            }
        }
    }
}
