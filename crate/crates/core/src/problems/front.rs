//! Analytic Pareto-front samples used as reference sets by the indicators.

use std::io::{BufRead, Write};
use std::path::Path;

use super::wfg::Shape;
use super::{ProblemKind, MIN_OBJECTIVES};
use crate::error::{Error, Result};
use crate::pareto::nondominated_indices;

/// Points sampled from the true Pareto front of a problem at a fixed
/// objective count.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceFront {
    pub points: Vec<Vec<f64>>,
}

impl ReferenceFront {
    pub fn new(points: Vec<Vec<f64>>) -> Self {
        Self { points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn num_objectives(&self) -> usize {
        self.points.first().map_or(0, Vec::len)
    }

    /// Per-objective minimum over the sample.
    pub fn ideal(&self) -> Vec<f64> {
        self.fold(f64::INFINITY, f64::min)
    }

    /// Per-objective maximum over the sample.
    pub fn nadir(&self) -> Vec<f64> {
        self.fold(f64::NEG_INFINITY, f64::max)
    }

    fn fold(&self, init: f64, op: fn(f64, f64) -> f64) -> Vec<f64> {
        let mut acc = vec![init; self.num_objectives()];
        for p in &self.points {
            for (a, &v) in acc.iter_mut().zip(p) {
                *a = op(*a, v);
            }
        }
        acc
    }

    /// One point per row; the header names the objectives `f1..fM`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let header: Vec<String> = (1..=self.num_objectives()).map(|i| format!("f{i}")).collect();
        writeln!(out, "{}", header.join(","))?;
        for p in &self.points {
            let row: Vec<String> = p.iter().map(|v| v.to_string()).collect();
            writeln!(out, "{}", row.join(","))?;
        }
        Ok(())
    }

    pub fn read_csv<R: BufRead>(input: R) -> std::io::Result<Self> {
        let mut points = Vec::new();
        for (i, line) in input.lines().enumerate() {
            let line = line?;
            if i == 0 || line.trim().is_empty() {
                continue;
            }
            let row = line
                .split(',')
                .map(|v| v.trim().parse::<f64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e))?;
            points.push(row);
        }
        Ok(Self { points })
    }

    pub fn save(&self, path: &Path) -> std::io::Result<()> {
        let file = std::fs::File::create(path)?;
        self.write_csv(std::io::BufWriter::new(file))
    }

    pub fn load(path: &Path) -> std::io::Result<Self> {
        let file = std::fs::File::open(path)?;
        Self::read_csv(std::io::BufReader::new(file))
    }
}

const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

fn radical_inverse(mut index: u64, base: u64) -> f64 {
    let mut result = 0.0;
    let mut f = 1.0 / base as f64;
    while index > 0 {
        result += f * (index % base) as f64;
        index /= base;
        f /= base as f64;
    }
    result
}

/// Parameter-domain sample: an even grid when one-dimensional, otherwise the
/// cube vertices followed by a Halton sequence.
fn parameter_sample(dim: usize, count: usize) -> Vec<Vec<f64>> {
    if count == 0 {
        return Vec::new();
    }
    if dim == 1 {
        if count == 1 {
            return vec![vec![0.0]];
        }
        return (0..count)
            .map(|i| vec![i as f64 / (count - 1) as f64])
            .collect();
    }
    let mut out: Vec<Vec<f64>> = (0..1usize << dim)
        .map(|mask| (0..dim).map(|b| ((mask >> b) & 1) as f64).collect())
        .collect();
    out.truncate(count);
    let mut index = 1u64;
    while out.len() < count {
        out.push((0..dim).map(|d| radical_inverse(index, PRIMES[d])).collect());
        index += 1;
    }
    out
}

fn front_image(kind: ProblemKind, params: &[f64], m: usize) -> Vec<f64> {
    match kind {
        ProblemKind::F1 => Shape::Linear.eval(params, m).into_iter().map(|h| 0.5 * h).collect(),
        ProblemKind::F2 | ProblemKind::F3 | ProblemKind::F4 => Shape::Concave.eval(params, m),
        ProblemKind::Wfg(i) => {
            let shape = super::wfg::shape_of(i as usize);
            let full: Vec<f64>;
            let x = if i == 3 {
                full = std::iter::once(params[0])
                    .chain(std::iter::repeat_n(0.5, m - 2))
                    .collect();
                &full[..]
            } else {
                params
            };
            shape
                .eval(x, m)
                .into_iter()
                .enumerate()
                .map(|(j, h)| 2.0 * (j + 1) as f64 * h)
                .collect()
        }
    }
}

/// Whether the raw shape image can contain dominated points.
fn needs_filtering(kind: ProblemKind) -> bool {
    matches!(kind, ProblemKind::Wfg(1) | ProblemKind::Wfg(2) | ProblemKind::Wfg(3))
}

/// Sample `count` points from the analytic front of `kind` with `m`
/// objectives.
pub fn sample_true_pf(kind: ProblemKind, m: usize, count: usize) -> Result<ReferenceFront> {
    if m < MIN_OBJECTIVES {
        return Err(Error::InvalidConfig(format!("objective count {m} < 2")));
    }
    if m - 1 > PRIMES.len() {
        return Err(Error::UnsupportedProblem(format!("{kind} with {m} objectives")));
    }
    let dim = if kind == ProblemKind::Wfg(3) { 1 } else { m - 1 };
    if !needs_filtering(kind) {
        let points = parameter_sample(dim, count)
            .iter()
            .map(|u| front_image(kind, u, m))
            .collect();
        return Ok(ReferenceFront::new(points));
    }

    let mut size = count.max(2);
    loop {
        let images: Vec<Vec<f64>> = parameter_sample(dim, size)
            .iter()
            .map(|u| front_image(kind, u, m))
            .collect();
        let keep = nondominated_indices(&images);
        if keep.len() >= count {
            let chosen: Vec<usize> = if dim == 1 {
                // Even thinning along the curve keeps both ends.
                (0..count)
                    .map(|i| {
                        if count == 1 {
                            keep[0]
                        } else {
                            keep[(i * (keep.len() - 1) + (count - 1) / 2) / (count - 1)]
                        }
                    })
                    .collect()
            } else {
                keep[..count].to_vec()
            };
            return Ok(ReferenceFront::new(
                chosen.into_iter().map(|i| images[i].clone()).collect(),
            ));
        }
        size *= 2;
    }
}
