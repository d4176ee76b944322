//! The WFG toolkit (WFG1-WFG9) with `k` position and `l` distance parameters.
//! Variable `i` (1-based) ranges over `[0, 2i]`.

use std::f64::consts::PI;

const EPS: f64 = 1.0e-10;

fn correct_to_01(a: f64) -> f64 {
    if (-EPS..=0.0).contains(&a) {
        0.0
    } else if (1.0..=1.0 + EPS).contains(&a) {
        1.0
    } else {
        a
    }
}

// ---- transformations -------------------------------------------------------

fn b_poly(y: f64, alpha: f64) -> f64 {
    correct_to_01(y.powf(alpha))
}

fn b_flat(y: f64, a: f64, b: f64, c: f64) -> f64 {
    let t1 = (y - b).floor().min(0.0) * a * (b - y) / b;
    let t2 = (c - y).floor().min(0.0) * (1.0 - a) * (y - c) / (1.0 - c);
    correct_to_01(a + t1 - t2)
}

fn b_param(y: f64, u: f64, a: f64, b: f64, c: f64) -> f64 {
    let v = a - (1.0 - 2.0 * u) * ((0.5 - u).floor() + a).abs();
    correct_to_01(y.powf(b + (c - b) * v))
}

fn s_linear(y: f64, a: f64) -> f64 {
    correct_to_01((y - a).abs() / ((a - y).floor() + a).abs())
}

fn s_decept(y: f64, a: f64, b: f64, c: f64) -> f64 {
    let t1 = (y - a + b).floor() * (1.0 - c + (a - b) / b) / (a - b);
    let t2 = (a + b - y).floor() * (1.0 - c + (1.0 - a - b) / b) / (1.0 - a - b);
    correct_to_01(1.0 + ((y - a).abs() - b) * (t1 + t2 + 1.0 / b))
}

fn s_multi(y: f64, a: f64, b: f64, c: f64) -> f64 {
    let t = (y - c).abs() / (2.0 * ((c - y).floor() + c));
    correct_to_01((1.0 + ((4.0 * a + 2.0) * PI * (0.5 - t)).cos() + 4.0 * b * t * t) / (b + 2.0))
}

fn r_sum(y: &[f64], w: &[f64]) -> f64 {
    let num: f64 = y.iter().zip(w).map(|(a, b)| a * b).sum();
    let den: f64 = w.iter().sum();
    correct_to_01(num / den)
}

fn r_nonsep(y: &[f64], a: usize) -> f64 {
    let len = y.len();
    let mut num = 0.0;
    for j in 0..len {
        num += y[j];
        for k in 0..a.saturating_sub(1) {
            num += (y[j] - y[(1 + j + k) % len]).abs();
        }
    }
    let half = (a as f64 / 2.0).ceil();
    let den = (len as f64 / a as f64) * half * (1.0 + 2.0 * a as f64 - 2.0 * half);
    correct_to_01(num / den)
}

// ---- shapes ----------------------------------------------------------------

/// Shape functions evaluated on the `m - 1` shape parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Linear,
    Concave,
    /// Convex in the first `m - 1` objectives, mixed in the last.
    ConvexMixed,
    /// Convex in the first `m - 1` objectives, disconnected in the last.
    ConvexDisc,
}

fn linear(x: &[f64], m: usize) -> Vec<f64> {
    (1..=m)
        .map(|obj| {
            let upto = m - obj;
            let mut h: f64 = x[..upto].iter().product();
            if obj > 1 {
                h *= 1.0 - x[upto];
            }
            h
        })
        .collect()
}

fn concave(x: &[f64], m: usize) -> Vec<f64> {
    (1..=m)
        .map(|obj| {
            let upto = m - obj;
            let mut h: f64 = x[..upto].iter().map(|v| (v * PI / 2.0).sin()).product();
            if obj > 1 {
                h *= (x[upto] * PI / 2.0).cos();
            }
            h
        })
        .collect()
}

fn convex(x: &[f64], m: usize) -> Vec<f64> {
    (1..=m)
        .map(|obj| {
            let upto = m - obj;
            let mut h: f64 = x[..upto].iter().map(|v| 1.0 - (v * PI / 2.0).cos()).product();
            if obj > 1 {
                h *= 1.0 - (x[upto] * PI / 2.0).sin();
            }
            h
        })
        .collect()
}

fn mixed(x0: f64, alpha: f64, a: f64) -> f64 {
    let tmp = 2.0 * a * PI;
    (1.0 - x0 - (tmp * x0 + PI / 2.0).cos() / tmp).powf(alpha)
}

fn disc(x0: f64, alpha: f64, beta: f64, a: f64) -> f64 {
    1.0 - x0.powf(alpha) * (a * x0.powf(beta) * PI).cos().powi(2)
}

impl Shape {
    pub fn eval(self, x: &[f64], m: usize) -> Vec<f64> {
        match self {
            Shape::Linear => linear(x, m),
            Shape::Concave => concave(x, m),
            Shape::ConvexMixed => {
                let mut h = convex(x, m);
                h[m - 1] = mixed(x[0], 1.0, 5.0);
                h
            }
            Shape::ConvexDisc => {
                let mut h = convex(x, m);
                h[m - 1] = disc(x[0], 1.0, 1.0, 5.0);
                h
            }
        }
    }
}

pub fn shape_of(problem: usize) -> Shape {
    match problem {
        1 => Shape::ConvexMixed,
        2 => Shape::ConvexDisc,
        3 => Shape::Linear,
        _ => Shape::Concave,
    }
}

// ---- problem definitions ---------------------------------------------------

/// Evaluate WFG`problem` (1..=9) at decision vector `z` with `k` position
/// parameters and `m` objectives.
pub fn evaluate(problem: usize, z: &[f64], k: usize, m: usize) -> Vec<f64> {
    let n = z.len();
    debug_assert!(k < n && k.is_multiple_of(m - 1));
    let y: Vec<f64> = z
        .iter()
        .enumerate()
        .map(|(i, &v)| v / (2.0 * (i + 1) as f64))
        .collect();

    let t = match problem {
        1 => wfg1(y, k, m),
        2 | 3 => wfg2_3(y, k, m),
        4 => wfg4(y, k, m),
        5 => wfg5(y, k, m),
        6 => wfg6(y, k, m),
        7 => wfg7(y, k, m),
        8 => wfg8(y, k, m),
        9 => wfg9(y, k, m),
        _ => panic!("no such WFG problem: {problem}"),
    };
    debug_assert_eq!(t.len(), m);

    // Degenerate problem WFG3 keeps only the first shape parameter free.
    let x: Vec<f64> = (0..m - 1)
        .map(|i| {
            let a = if problem == 3 && i > 0 { 0.0 } else { 1.0 };
            t[m - 1].max(a) * (t[i] - 0.5) + 0.5
        })
        .collect();
    let h = shape_of(problem).eval(&x, m);
    (0..m)
        .map(|i| t[m - 1] + 2.0 * (i + 1) as f64 * h[i])
        .collect()
}

fn sum_reduce(y: &[f64], k: usize, m: usize, weights: &[f64]) -> Vec<f64> {
    let group = k / (m - 1);
    let mut t: Vec<f64> = (0..m - 1)
        .map(|i| r_sum(&y[i * group..(i + 1) * group], &weights[i * group..(i + 1) * group]))
        .collect();
    t.push(r_sum(&y[k..], &weights[k..]));
    t
}

fn nonsep_reduce(y: &[f64], k: usize, m: usize) -> Vec<f64> {
    let group = k / (m - 1);
    let l = y.len() - k;
    let mut t: Vec<f64> = (0..m - 1)
        .map(|i| r_nonsep(&y[i * group..(i + 1) * group], group))
        .collect();
    t.push(r_nonsep(&y[k..], l));
    t
}

fn ones(n: usize) -> Vec<f64> {
    vec![1.0; n]
}

fn linear_shift_distance(y: &mut [f64], k: usize) {
    for v in &mut y[k..] {
        *v = s_linear(*v, 0.35);
    }
}

fn wfg1(mut y: Vec<f64>, k: usize, m: usize) -> Vec<f64> {
    linear_shift_distance(&mut y, k);
    for v in &mut y[k..] {
        *v = b_flat(*v, 0.8, 0.75, 0.85);
    }
    for v in &mut y {
        *v = b_poly(*v, 0.02);
    }
    let w: Vec<f64> = (1..=y.len()).map(|i| 2.0 * i as f64).collect();
    sum_reduce(&y, k, m, &w)
}

fn wfg2_3(mut y: Vec<f64>, k: usize, m: usize) -> Vec<f64> {
    linear_shift_distance(&mut y, k);
    let l = y.len() - k;
    let mut t: Vec<f64> = y[..k].to_vec();
    for i in 0..l / 2 {
        t.push(r_nonsep(&y[k + 2 * i..k + 2 * i + 2], 2));
    }
    sum_reduce(&t, k, m, &ones(t.len()))
}

fn wfg4(mut y: Vec<f64>, k: usize, m: usize) -> Vec<f64> {
    for v in &mut y {
        *v = s_multi(*v, 30.0, 10.0, 0.35);
    }
    sum_reduce(&y, k, m, &ones(y.len()))
}

fn wfg5(mut y: Vec<f64>, k: usize, m: usize) -> Vec<f64> {
    for v in &mut y {
        *v = s_decept(*v, 0.35, 0.001, 0.05);
    }
    sum_reduce(&y, k, m, &ones(y.len()))
}

fn wfg6(mut y: Vec<f64>, k: usize, m: usize) -> Vec<f64> {
    linear_shift_distance(&mut y, k);
    nonsep_reduce(&y, k, m)
}

fn param_dependent(y: &[f64], i: usize, u: f64) -> f64 {
    b_param(y[i], u, 0.98 / 49.98, 0.02, 50.0)
}

fn wfg7(y: Vec<f64>, k: usize, m: usize) -> Vec<f64> {
    let n = y.len();
    let mut t = y.clone();
    for i in 0..k {
        let u = r_sum(&y[i + 1..], &ones(n - i - 1));
        t[i] = param_dependent(&y, i, u);
    }
    linear_shift_distance(&mut t, k);
    sum_reduce(&t, k, m, &ones(n))
}

fn wfg8(y: Vec<f64>, k: usize, m: usize) -> Vec<f64> {
    let n = y.len();
    let mut t = y.clone();
    for i in k..n {
        let u = r_sum(&y[..i], &ones(i));
        t[i] = param_dependent(&y, i, u);
    }
    linear_shift_distance(&mut t, k);
    sum_reduce(&t, k, m, &ones(n))
}

fn wfg9(y: Vec<f64>, k: usize, m: usize) -> Vec<f64> {
    let n = y.len();
    let mut t = y.clone();
    for i in 0..n - 1 {
        let u = r_sum(&y[i + 1..], &ones(n - i - 1));
        t[i] = param_dependent(&y, i, u);
    }
    for (i, v) in t.iter_mut().enumerate() {
        *v = if i < k {
            s_decept(*v, 0.35, 0.001, 0.05)
        } else {
            s_multi(*v, 30.0, 95.0, 0.35)
        };
    }
    nonsep_reduce(&t, k, m)
}
