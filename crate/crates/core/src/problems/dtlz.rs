//! DTLZ1-DTLZ4 with the objective count supplied per call. The first `m - 1`
//! variables are position variables, the rest are distance variables.

use std::f64::consts::PI;

fn g_multimodal(distance: &[f64]) -> f64 {
    let sum: f64 = distance
        .iter()
        .map(|&x| (x - 0.5).powi(2) - (20.0 * PI * (x - 0.5)).cos())
        .sum();
    100.0 * (distance.len() as f64 + sum)
}

fn g_sphere(distance: &[f64]) -> f64 {
    distance.iter().map(|&x| (x - 0.5).powi(2)).sum()
}

fn linear_front(position: &[f64], m: usize, scale: f64) -> Vec<f64> {
    (0..m)
        .map(|i| {
            let mut f = scale;
            for &x in &position[..m - 1 - i] {
                f *= x;
            }
            if i > 0 {
                f *= 1.0 - position[m - 1 - i];
            }
            f
        })
        .collect()
}

fn spherical_front(position: &[f64], m: usize, scale: f64, alpha: f64) -> Vec<f64> {
    (0..m)
        .map(|i| {
            let mut f = scale;
            for &x in &position[..m - 1 - i] {
                f *= (x.powf(alpha) * PI / 2.0).cos();
            }
            if i > 0 {
                f *= (position[m - 1 - i].powf(alpha) * PI / 2.0).sin();
            }
            f
        })
        .collect()
}

pub fn dtlz1(x: &[f64], m: usize) -> Vec<f64> {
    let g = g_multimodal(&x[m - 1..]);
    linear_front(&x[..m - 1], m, 0.5 * (1.0 + g))
}

pub fn dtlz2(x: &[f64], m: usize) -> Vec<f64> {
    let g = g_sphere(&x[m - 1..]);
    spherical_front(&x[..m - 1], m, 1.0 + g, 1.0)
}

pub fn dtlz3(x: &[f64], m: usize) -> Vec<f64> {
    let g = g_multimodal(&x[m - 1..]);
    spherical_front(&x[..m - 1], m, 1.0 + g, 1.0)
}

pub fn dtlz4(x: &[f64], m: usize) -> Vec<f64> {
    let g = g_sphere(&x[m - 1..]);
    spherical_front(&x[..m - 1], m, 1.0 + g, 100.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dtlz2_corner() {
        let mut x = vec![0.5; 16];
        x[0] = 0.0;
        let f = dtlz2(&x, 2);
        assert!((f[0] - 1.0).abs() < 1e-15);
        assert!(f[1].abs() < 1e-15);
    }

    #[test]
    fn dtlz1_optimum_on_simplex() {
        for m in 2..=7 {
            let mut x = vec![0.5; 11];
            for (i, v) in x.iter_mut().take(m - 1).enumerate() {
                *v = 0.1 + 0.13 * i as f64;
            }
            let f = dtlz1(&x, m);
            assert_eq!(f.len(), m);
            assert!((f.iter().sum::<f64>() - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn sphere_problems_optimum_on_unit_sphere() {
        for m in 2..=7 {
            let mut x = vec![0.5; 16];
            for (i, v) in x.iter_mut().take(m - 1).enumerate() {
                *v = 0.9 - 0.11 * i as f64;
            }
            for f in [dtlz2(&x, m), dtlz3(&x, m), dtlz4(&x, m)] {
                let norm: f64 = f.iter().map(|v| v * v).sum::<f64>().sqrt();
                assert!((norm - 1.0).abs() < 1e-12);
            }
        }
    }
}
