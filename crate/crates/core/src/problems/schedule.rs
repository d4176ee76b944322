use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub const MIN_OBJECTIVES: usize = 2;
pub const MAX_OBJECTIVES: usize = 7;

/// Ordered objective counts, one per environment. Environment 0 lasts
/// `warmup` generations and every later environment lasts `tau` generations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChangeSchedule {
    segments: Vec<usize>,
    tau: usize,
    warmup: usize,
}

/// Where a generation falls in a schedule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnvironmentPosition {
    pub t: usize,
    pub m: usize,
}

impl ChangeSchedule {
    pub const DEFAULT_WARMUP: usize = 1000;

    pub fn new(segments: Vec<usize>, tau: usize, warmup: usize) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::InvalidConfig("schedule needs at least one segment".into()));
        }
        if tau == 0 || warmup == 0 {
            return Err(Error::InvalidConfig("tau and warmup must be positive".into()));
        }
        if let Some(&m) = segments
            .iter()
            .find(|&&m| !(MIN_OBJECTIVES..=MAX_OBJECTIVES).contains(&m))
        {
            return Err(Error::InvalidConfig(format!(
                "objective count {m} outside [{MIN_OBJECTIVES}, {MAX_OBJECTIVES}]"
            )));
        }
        for w in segments.windows(2) {
            let step = w[0].abs_diff(w[1]);
            if step != 1 && step != 2 {
                return Err(Error::InvalidConfig(format!(
                    "consecutive objective counts {} -> {} must differ by 1 or 2",
                    w[0], w[1]
                )));
            }
        }
        Ok(Self {
            segments,
            tau,
            warmup,
        })
    }

    /// Visit each waypoint one objective at a time, e.g. `[2, 7, 2]` gives
    /// 2-3-4-5-6-7-6-5-4-3-2.
    pub fn one_by_one(waypoints: &[usize], tau: usize, warmup: usize) -> Result<Self> {
        Self::new(expand_waypoints(waypoints), tau, warmup)
    }

    pub fn segments(&self) -> &[usize] {
        &self.segments
    }

    pub fn tau(&self) -> usize {
        self.tau
    }

    pub fn warmup(&self) -> usize {
        self.warmup
    }

    pub fn num_changes(&self) -> usize {
        self.segments.len() - 1
    }

    pub fn total_generations(&self) -> usize {
        self.warmup + self.num_changes() * self.tau
    }

    pub fn objective_count(&self, t: usize) -> Option<usize> {
        self.segments.get(t).copied()
    }

    /// Environment index and objective count in effect at `generation`.
    pub fn position(&self, generation: usize) -> Result<EnvironmentPosition> {
        if generation >= self.total_generations() {
            return Err(Error::EndOfSchedule(generation));
        }
        let t = if generation < self.warmup {
            0
        } else {
            1 + (generation - self.warmup) / self.tau
        };
        Ok(EnvironmentPosition {
            t,
            m: self.segments[t],
        })
    }

    /// First generation of environment `t`.
    pub fn start_of(&self, t: usize) -> usize {
        if t == 0 {
            0
        } else {
            self.warmup + (t - 1) * self.tau
        }
    }

    /// Last generation of environment `t`.
    pub fn end_of(&self, t: usize) -> usize {
        self.warmup + t * self.tau - 1
    }

    pub fn with_timing(&self, tau: usize, warmup: usize) -> Result<Self> {
        Self::new(self.segments.clone(), tau, warmup)
    }

    /// Compact label such as `2-3-4-3-2`.
    pub fn label(&self) -> String {
        self.segments
            .iter()
            .map(|m| m.to_string())
            .collect::<Vec<_>>()
            .join("-")
    }
}

fn expand_waypoints(waypoints: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    for (i, &w) in waypoints.iter().enumerate() {
        if i == 0 {
            out.push(w);
            continue;
        }
        let mut cur = *out.last().unwrap();
        while cur != w {
            cur = if w > cur { cur + 1 } else { cur - 1 };
            out.push(cur);
        }
    }
    out
}

/// Objective sequence parsed from text. `2-3-5-7` lists every environment;
/// `2..7..2` walks between waypoints one objective at a time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObjectiveSequence(pub Vec<usize>);

impl FromStr for ObjectiveSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidConfig(format!("cannot parse objective sequence '{s}'"));
        if s.contains("..") {
            let points = s
                .split("..")
                .map(|p| p.trim().parse::<usize>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?;
            Ok(Self(expand_waypoints(&points)))
        } else {
            let points = s
                .split('-')
                .map(|p| p.trim().parse::<usize>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?;
            Ok(Self(points))
        }
    }
}

impl fmt::Display for ObjectiveSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|m| m.to_string()).collect();
        write!(f, "{}", parts.join("-"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up_and_down_schedule() -> ChangeSchedule {
        ChangeSchedule::one_by_one(&[2, 7, 2], 25, 1000).unwrap()
    }

    #[test]
    fn two_seven_two_has_ten_changes() {
        let s = up_and_down_schedule();
        assert_eq!(s.segments(), &[2, 3, 4, 5, 6, 7, 6, 5, 4, 3, 2]);
        assert_eq!(s.num_changes(), 10);
    }

    #[test]
    fn positions_walk_the_segment_list() {
        let s = up_and_down_schedule();
        assert_eq!(s.position(999).unwrap(), EnvironmentPosition { t: 0, m: 2 });
        assert_eq!(s.position(1000).unwrap(), EnvironmentPosition { t: 1, m: 3 });
        assert_eq!(s.position(1000 + 25 * 8).unwrap(), EnvironmentPosition { t: 9, m: 3 });
        assert_eq!(s.position(1000 + 25 * 9).unwrap(), EnvironmentPosition { t: 10, m: 2 });
        assert_eq!(s.position(1000 + 25 * 10), Err(Error::EndOfSchedule(1250)));
    }

    #[test]
    fn segment_boundaries() {
        let s = up_and_down_schedule();
        assert_eq!(s.start_of(1), 1000);
        assert_eq!(s.end_of(0), 999);
        assert_eq!(s.end_of(10), s.total_generations() - 1);
        for t in 0..=10 {
            assert_eq!(s.position(s.start_of(t)).unwrap().t, t);
            assert_eq!(s.position(s.end_of(t)).unwrap().t, t);
        }
    }

    #[test]
    fn rejects_invalid_sequences() {
        assert!(ChangeSchedule::new(vec![2, 5], 5, 10).is_err());
        assert!(ChangeSchedule::new(vec![1, 2], 5, 10).is_err());
        assert!(ChangeSchedule::new(vec![7, 8], 5, 10).is_err());
        assert!(ChangeSchedule::new(vec![2, 3, 5, 7, 5, 3, 2], 5, 10).is_ok());
        assert!(ChangeSchedule::new(vec![], 5, 10).is_err());
    }

    #[test]
    fn parses_sequences() {
        let s: ObjectiveSequence = "2..7..2".parse().unwrap();
        assert_eq!(s.0.len(), 11);
        let s: ObjectiveSequence = "7-5-3-2-3-5-7".parse().unwrap();
        assert_eq!(s.0, vec![7, 5, 3, 2, 3, 5, 7]);
        assert_eq!(s.to_string(), "7-5-3-2-3-5-7");
        assert!("2-x".parse::<ObjectiveSequence>().is_err());
    }
}
