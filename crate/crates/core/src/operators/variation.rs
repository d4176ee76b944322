use crate::random::RandomSource;

const EPS: f64 = 1.0e-14;

/// Simulated binary crossover and polynomial mutation parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VariationConfig {
    pub crossover_probability: f64,
    pub crossover_eta: f64,
    /// Per-variable mutation probability; `None` means `1/n`.
    pub mutation_probability: Option<f64>,
    pub mutation_eta: f64,
}

impl Default for VariationConfig {
    fn default() -> Self {
        Self {
            crossover_probability: 1.0,
            crossover_eta: 20.0,
            mutation_probability: None,
            mutation_eta: 20.0,
        }
    }
}

impl VariationConfig {
    pub fn mutation_rate(&self, n: usize) -> f64 {
        self.mutation_probability.unwrap_or(1.0 / n as f64)
    }

    pub fn validate(&self) -> crate::Result<()> {
        let prob_ok = |p: f64| (0.0..=1.0).contains(&p);
        if !prob_ok(self.crossover_probability)
            || !self.mutation_probability.is_none_or(prob_ok)
            || self.crossover_eta <= 0.0
            || self.mutation_eta <= 0.0
        {
            return Err(crate::Error::InvalidConfig(format!("bad variation parameters: {self:?}")));
        }
        Ok(())
    }
}

/// Bounded SBX. Children are clamped into `[lower, upper]`.
pub fn sbx_crossover(
    a: &[f64],
    b: &[f64],
    lower: &[f64],
    upper: &[f64],
    cfg: &VariationConfig,
    rng: &mut RandomSource,
) -> (Vec<f64>, Vec<f64>) {
    assert_eq!(a.len(), b.len());
    let mut c1 = a.to_vec();
    let mut c2 = b.to_vec();
    if rng.unit() >= cfg.crossover_probability {
        return (c1, c2);
    }
    let eta = cfg.crossover_eta;
    for i in 0..a.len() {
        if rng.unit() > 0.5 {
            continue;
        }
        let (yl, yu) = (lower[i], upper[i]);
        if (a[i] - b[i]).abs() <= EPS || yu - yl <= EPS {
            continue;
        }
        let (y1, y2) = if a[i] < b[i] { (a[i], b[i]) } else { (b[i], a[i]) };
        let u = rng.unit();

        let spread_q = |beta: f64| {
            let alpha = 2.0 - beta.powf(-(eta + 1.0));
            if u <= 1.0 / alpha {
                (u * alpha).powf(1.0 / (eta + 1.0))
            } else {
                (1.0 / (2.0 - u * alpha)).powf(1.0 / (eta + 1.0))
            }
        };
        let beta_low = 1.0 + 2.0 * (y1 - yl) / (y2 - y1);
        let beta_high = 1.0 + 2.0 * (yu - y2) / (y2 - y1);
        let lo_child = (0.5 * ((y1 + y2) - spread_q(beta_low) * (y2 - y1))).clamp(yl, yu);
        let hi_child = (0.5 * ((y1 + y2) + spread_q(beta_high) * (y2 - y1))).clamp(yl, yu);

        if rng.unit() <= 0.5 {
            c1[i] = hi_child;
            c2[i] = lo_child;
        } else {
            c1[i] = lo_child;
            c2[i] = hi_child;
        }
    }
    (c1, c2)
}

/// Bounded polynomial mutation; the result stays within `[lower, upper]`.
pub fn polynomial_mutation(
    x: &[f64],
    lower: &[f64],
    upper: &[f64],
    cfg: &VariationConfig,
    rng: &mut RandomSource,
) -> Vec<f64> {
    let pm = cfg.mutation_rate(x.len());
    let eta = cfg.mutation_eta;
    let power = 1.0 / (eta + 1.0);
    x.iter()
        .enumerate()
        .map(|(i, &y)| {
            if rng.unit() >= pm {
                return y;
            }
            let (yl, yu) = (lower[i], upper[i]);
            let span = yu - yl;
            if span <= 0.0 {
                return y;
            }
            let delta1 = (y - yl) / span;
            let delta2 = (yu - y) / span;
            let u = rng.unit();
            let deltaq = if u < 0.5 {
                let val = 2.0 * u + (1.0 - 2.0 * u) * (1.0 - delta1).powf(eta + 1.0);
                val.powf(power) - 1.0
            } else {
                let val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * (1.0 - delta2).powf(eta + 1.0);
                1.0 - val.powf(power)
            };
            (y + deltaq * span).clamp(yl, yu)
        })
        .collect()
}
