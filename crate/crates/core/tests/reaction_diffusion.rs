mod common;

use common::smooth_profile;
use mittag_kinetics::reaction_diffusion::{rd_solve_fd, rd_solve_spectral, RDProblem};
use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;
use std::f64::consts::PI;

fn max_diff(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

#[test]
fn finite_differences_converge_to_spectral_at_second_order() {
    let (a, nu2, xi) = (0.5, 1.0, 0.5);
    let n0 = smooth_profile(21);
    let n1 = smooth_profile(22);
    let times = vec![0.5, 1.0, 1.5, 2.0];
    let mut errors = vec![];
    for &m in &[16usize, 32, 64, 128] {
        let p = RDProblem::from_functions(
            a,
            nu2,
            xi,
            2.0 * PI,
            m,
            n0.clone(),
            n1.clone(),
            times.clone(),
        );
        let spectral = rd_solve_spectral(&p).unwrap();
        let fd = rd_solve_fd(&p, 0.5 * p.dx()).unwrap();
        errors.push(max_diff(&spectral.field, &fd.field));
    }
    let orders: Vec<f64> = errors.windows(2).map(|w| (w[0] / w[1]).log2()).collect();
    assert!(
        orders.iter().all(|&q| q >= 1.8),
        "errors {errors:?} orders {orders:?}"
    );
}

#[test]
fn spectral_field_is_real() {
    let p = RDProblem::from_functions(
        0.5,
        1.0,
        0.5,
        2.0 * PI,
        64,
        smooth_profile(23),
        smooth_profile(24),
        vec![0.7, 2.0],
    );
    let s = rd_solve_spectral(&p).unwrap();
    assert!(s.imag_residue <= 1e-12, "{}", s.imag_residue);
}

#[test]
fn single_mode_stays_single() {
    let k = 5.0;
    let p = RDProblem::from_functions(
        0.5,
        1.0,
        0.5,
        2.0 * PI,
        64,
        move |x| (k * x).sin(),
        |_| 0.0,
        vec![1.0, 2.0],
    );
    let s = rd_solve_spectral(&p).unwrap();
    let fft = FftPlanner::<f64>::new().plan_fft_forward(64);
    for row in &s.field {
        let mut spec: Vec<Complex64> = row.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        fft.process(&mut spec);
        let total: f64 = spec.iter().map(|z| z.norm_sqr()).sum();
        let leak: f64 = spec
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != 5 && j != 59)
            .map(|(_, z)| z.norm_sqr())
            .sum();
        assert!(leak <= 1e-12 * total, "{leak} / {total}");
    }
}

#[test]
fn cosine_dispersion() {
    let (k, nu2) = (4.0, 2.0);
    let times: Vec<f64> = (1..=10).map(|i| 0.3 * i as f64).collect();
    let p = RDProblem::from_functions(
        0.0,
        nu2,
        0.0,
        2.0 * PI,
        32,
        move |x| (k * x).cos(),
        |_| 0.0,
        times.clone(),
    );
    let s = rd_solve_spectral(&p).unwrap();
    let w = nu2.sqrt() * k;
    for (i, &t) in times.iter().enumerate() {
        for (j, &x) in s.x.iter().enumerate() {
            assert!((s.field[i][j] - (w * t).cos() * (k * x).cos()).abs() < 1e-6);
        }
    }
}

#[test]
fn discrete_dispersion_is_second_order() {
    // phase error of the scheme ~ ω t (k dx)² / 24 for a resolved mode
    let times = vec![1.0, 2.0, 3.0];
    let mut errors = vec![];
    for &m in &[32usize, 64] {
        let p = RDProblem::from_functions(
            0.0,
            2.0,
            0.0,
            2.0 * PI,
            m,
            |x| x.cos(),
            |_| 0.0,
            times.clone(),
        );
        let fd = rd_solve_fd(&p, 0.5 * p.dx()).unwrap();
        let exact: Vec<Vec<f64>> = times
            .iter()
            .map(|&t| {
                p.x_grid()
                    .iter()
                    .map(|&x| (2f64.sqrt() * t).cos() * x.cos())
                    .collect()
            })
            .collect();
        errors.push(max_diff(&fd.field, &exact));
    }
    assert!(
        errors[1] < 5e-3 && errors[0] / errors[1] > 3.5,
        "{errors:?}"
    );
}
