#![allow(dead_code)]

use mittag_kinetics::special_functions::gamma::ln_gamma_signed;
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn uniform(rng: &mut StdRng, lo: f64, hi: f64) -> f64 {
    rng.random_range(lo..hi)
}

/// 0.1, 0.2, …, 3.0
pub fn time_grid() -> Vec<f64> {
    (1..=30).map(|k| 0.1 * k as f64).collect()
}

/// Largest deviation relative to max(|reference|, 1e-3 ‖reference‖∞), so
/// sign changes do not blow the metric up.
pub fn max_rel_err(values: &[f64], reference: &[f64]) -> f64 {
    let scale = reference.iter().fold(0.0f64, |m, r| m.max(r.abs()));
    values
        .iter()
        .zip(reference)
        .map(|(v, r)| (v - r).abs() / r.abs().max(1e-3 * scale))
        .fold(0.0, f64::max)
}

/// Density of X - Y for X ~ Γ(a1, b1), Y ~ Γ(a2, b2), t > 0, integrated
/// directly over the closed-form densities after y = v^{1/a2}.
pub fn gamma_difference_density(a1: f64, b1: f64, a2: f64, b2: f64, t: f64) -> f64 {
    let norm = ln_gamma_signed(a1).0 + a1 * b1.ln() + ln_gamma_signed(a2).0 + a2 * b2.ln();
    let integrand = |v: f64| {
        if v <= 0.0 {
            return 0.0;
        }
        let y = v.powf(1.0 / a2);
        ((a1 - 1.0) * (t + y).ln() - (t + y) / b1 - y / b2 - norm).exp() / a2
    };
    let y_max = b2.max(b1) * (60.0 + 3.0 * a2);
    let mut edges = vec![0.0];
    let mut y = 0.5;
    while y < y_max {
        edges.push(y.powf(a2));
        y *= 2.0;
    }
    edges.push(y_max.powf(a2));
    edges
        .windows(2)
        .map(|w| quadrature::double_exponential::integrate(integrand, w[0], w[1], 1e-14).integral)
        .sum()
}

/// Smooth periodic data built from the first few Fourier modes.
pub fn smooth_profile(seed: u64) -> impl Fn(f64) -> f64 + Clone {
    let mut r = rng(seed);
    let coeffs: Vec<(f64, f64)> = (1..=4)
        .map(|_| (uniform(&mut r, -1.0, 1.0), uniform(&mut r, -1.0, 1.0)))
        .collect();
    let offset = uniform(&mut r, -0.5, 0.5);
    move |x: f64| {
        offset
            + coeffs
                .iter()
                .enumerate()
                .map(|(k, &(c, s))| {
                    let k = (k + 1) as f64;
                    (c * (k * x).cos() + s * (k * x).sin()) / (k * k)
                })
                .sum::<f64>()
    }
}

/// Inverse of p^{1-s}/(p² + ap + b) for s = 0 (numerator p) or s = 1
/// (numerator 1), from the roots of the quadratic.
pub fn damped_oscillator(a: f64, b: f64, s: u32, t: f64) -> f64 {
    let w = Complex64::new(b - 0.25 * a * a, 0.0).sqrt();
    let decay = (-0.5 * a * t).exp();
    let wt = w * t;
    let sinc = if w.norm() == 0.0 {
        Complex64::new(t, 0.0)
    } else {
        wt.sin() / w
    };
    let v = if s == 0 {
        wt.cos() - 0.5 * a * sinc
    } else {
        sinc
    };
    decay * v.re
}
