mod common;

use common::{gamma_difference_density, max_rel_err, rng, time_grid, uniform};
use mittag_kinetics::laplace::*;
use mittag_kinetics::special_functions::{g1_series, hyp1f1, G1Params, SeriesConfig};
use num_complex::Complex64;
use rand::rngs::StdRng;

const DRAWS: usize = 10;

fn round_trip(d: &TransformDescriptor, grid: &[f64]) -> f64 {
    let cfg = SeriesConfig::default();
    let inv = InversionConfig::default();
    let numeric: Vec<f64> = grid
        .iter()
        .map(|&t| lt_invert_numeric(d, t, &inv).unwrap())
        .collect();
    let exact: Vec<f64> = grid
        .iter()
        .map(|&t| d.closed_form_inverse(t, &cfg).unwrap())
        .collect();
    max_rel_err(&numeric, &exact)
}

fn check_kind(seed: u64, draw: impl Fn(&mut StdRng) -> TransformDescriptor) {
    let mut r = rng(seed);
    for _ in 0..DRAWS {
        let d = draw(&mut r);
        let err = round_trip(&d, &time_grid());
        assert!(err < 1e-5, "{d:?}: {err:e}");
    }
}

#[test]
fn gamma_power_round_trip() {
    check_kind(41, |r| TransformDescriptor::GammaPower {
        alpha: uniform(r, 0.5, 4.0),
        beta: uniform(r, 0.3, 2.0),
    });
}

#[test]
fn laplace_density_round_trip() {
    // coarser grid: each point is a convolution of two contour inversions
    let mut r = rng(42);
    for _ in 0..DRAWS {
        let d = TransformDescriptor::LaplaceDensity {
            beta: uniform(&mut r, 0.3, 2.0),
        };
        let err = round_trip(&d, &[0.1, 0.5, 1.2, 2.0, 3.0]);
        assert!(err < 1e-5, "{d:?}: {err:e}");
    }
}

#[test]
fn residual_product_round_trip() {
    let mut r = rng(43);
    let inv = InversionConfig::default();
    for _ in 0..DRAWS {
        let (b1, b2) = (uniform(&mut r, 0.5, 1.5), uniform(&mut r, 0.5, 1.5));
        let inputs = vec![
            (uniform(&mut r, 0.6, 1.5), b1),
            (uniform(&mut r, 0.6, 1.5), b1),
        ];
        let outputs = vec![(uniform(&mut r, 0.6, 1.5), b2)];
        let a1: f64 = inputs.iter().map(|p| p.0).sum();
        let a2 = outputs[0].0;
        let d = TransformDescriptor::ResidualProduct { inputs, outputs };
        let grid = [0.2, 1.0, 2.5];
        let numeric: Vec<f64> = grid
            .iter()
            .map(|&t| lt_invert_numeric(&d, t, &inv).unwrap())
            .collect();
        let exact: Vec<f64> = grid
            .iter()
            .map(|&t| gamma_difference_density(a1, b1, a2, b2, t))
            .collect();
        let err = max_rel_err(&numeric, &exact);
        assert!(err < 1e-5, "{d:?}: {err:e} {numeric:?} {exact:?}");
    }
}

#[test]
fn one_sided_residual_product_is_a_gamma_density() {
    check_kind(44, |r| {
        let b = uniform(r, 0.4, 1.5);
        TransformDescriptor::ResidualProduct {
            inputs: vec![(uniform(r, 0.5, 2.0), b), (uniform(r, 0.5, 2.0), b)],
            outputs: vec![],
        }
    });
}

#[test]
fn ml_basic_round_trip() {
    check_kind(45, |r| TransformDescriptor::MlBasic {
        n0: uniform(r, 0.5, 2.0),
        c: uniform(r, 0.5, 3.0),
        nu: uniform(r, 0.3, 1.5),
    });
}

#[test]
fn ml_general_round_trip() {
    check_kind(46, |r| TransformDescriptor::MlGeneral {
        n0: uniform(r, 0.5, 2.0),
        c: uniform(r, 0.5, 3.0),
        nu: uniform(r, 0.3, 1.5),
        mu: uniform(r, 0.5, 2.5),
        gamma: 0.0,
    });
    check_kind(47, |r| TransformDescriptor::MlGeneral {
        n0: uniform(r, 0.5, 2.0),
        c: uniform(r, 0.5, 3.0),
        nu: uniform(r, 0.3, 1.5),
        mu: uniform(r, 0.5, 2.5),
        gamma: uniform(r, -0.5, 2.0),
    });
}

#[test]
fn two_rate_round_trip() {
    check_kind(48, |r| TransformDescriptor::TwoRateProduct {
        n0: uniform(r, 0.5, 2.0),
        c: uniform(r, 0.5, 3.0),
        d: uniform(r, 0.5, 3.0),
        nu: uniform(r, 0.3, 1.5),
        mu: uniform(r, 0.5, 2.5),
    });
}

#[test]
fn three_term_round_trip() {
    let draw = |r: &mut StdRng| {
        let alpha = uniform(r, 1.0, 2.0);
        (
            alpha,
            uniform(r, 0.0, alpha - 0.2),
            uniform(r, 0.0, 1.0),
            uniform(r, 0.5, 3.0),
        )
    };
    check_kind(49, |r| {
        let (alpha, beta, a, b) = draw(r);
        TransformDescriptor::ThreeTermAlpha { alpha, beta, a, b }
    });
    check_kind(50, |r| {
        let (alpha, beta, a, b) = draw(r);
        TransformDescriptor::ThreeTermBeta { alpha, beta, a, b }
    });
}

#[test]
fn residual_product_factorises() {
    let mut r = rng(51);
    for _ in 0..100 {
        let inputs: Vec<(f64, f64)> = (0..2)
            .map(|_| (uniform(&mut r, 0.3, 3.0), uniform(&mut r, 0.1, 2.0)))
            .collect();
        let outputs: Vec<(f64, f64)> = (0..2)
            .map(|_| (uniform(&mut r, 0.3, 3.0), uniform(&mut r, 0.1, 2.0)))
            .collect();
        let lo = inputs
            .iter()
            .map(|&(_, b)| -1.0 / b)
            .fold(f64::NEG_INFINITY, f64::max);
        let hi = outputs
            .iter()
            .map(|&(_, b)| 1.0 / b)
            .fold(f64::INFINITY, f64::min);
        let p = uniform(&mut r, 0.9 * lo, 0.9 * hi);
        let d = TransformDescriptor::ResidualProduct {
            inputs: inputs.clone(),
            outputs: outputs.clone(),
        };
        let whole = lt_eval_real(&d, p).unwrap();
        let mut parts = 1.0;
        for &(alpha, beta) in &inputs {
            parts *= lt_eval_real(&TransformDescriptor::GammaPower { alpha, beta }, p).unwrap();
        }
        for &(alpha, beta) in &outputs {
            parts *= lt_eval_real(&TransformDescriptor::GammaPower { alpha, beta }, -p).unwrap();
        }
        assert!(
            (whole - parts).abs() <= 1e-12 * whole.abs(),
            "{whole} {parts}"
        );
    }
}

#[test]
fn power_of_scaled_argument() {
    let mut r = rng(52);
    for _ in 0..100 {
        let (nu, b, p) = (
            uniform(&mut r, 0.1, 2.0),
            uniform(&mut r, 0.1, 10.0),
            uniform(&mut r, 0.1, 10.0),
        );
        let (lhs, rhs) = self_similarity_check(nu, b, p);
        assert!((lhs - rhs).abs() <= 1e-13 * lhs);
    }
}

#[test]
fn ml_basic_scales_with_rate() {
    // N0/(p[1 + (c/p)^ν]) at (c, p) equals b times the same at (bc, bp)
    let mut r = rng(53);
    for _ in 0..100 {
        let (nu, c, b) = (
            uniform(&mut r, 0.2, 1.8),
            uniform(&mut r, 0.2, 3.0),
            uniform(&mut r, 0.2, 5.0),
        );
        let p = Complex64::new(uniform(&mut r, 0.1, 5.0), uniform(&mut r, -5.0, 5.0));
        let f = |c: f64, p: Complex64| {
            lt_eval(&TransformDescriptor::MlBasic { n0: 1.0, c, nu }, p).unwrap()
        };
        let (lhs, rhs) = (f(c, p), b * f(b * c, b * p));
        assert!((lhs - rhs).norm() <= 1e-12 * lhs.norm());
    }
}

#[test]
fn forward_transform_of_g1() {
    let params = G1Params {
        alpha: 0.5,
        beta: 1.2,
        gamma1: 1.5,
        beta1: 2.5,
    };
    let cfg = SeriesConfig::default();
    for &p in &[2.0f64, 5.0, 10.0] {
        let f = |t: f64| {
            t.powf(params.beta - 1.0) * g1_series(&params, t.powf(params.alpha), &cfg).unwrap()
        };
        let numeric = lt_forward_numeric(f, p, &QuadratureConfig::default()).unwrap();
        let exact = p.powf(-params.beta)
            * hyp1f1(params.gamma1, params.beta1, p.powf(-params.alpha), &cfg).unwrap();
        assert!(
            (numeric - exact).abs() <= 1e-6 * exact,
            "p={p}: {numeric} {exact}"
        );
    }
}

#[test]
fn forward_then_inverse() {
    // p >= 4 keeps the cut T = 40/p where the series is still accurate; its
    // cancellation noise there (~1e-9) also rules out the default 1e-11 target
    let d = TransformDescriptor::MlGeneral {
        n0: 1.0,
        c: 1.0,
        nu: 0.8,
        mu: 1.3,
        gamma: 0.5,
    };
    let cfg = SeriesConfig::default();
    let quad = QuadratureConfig {
        tol: 1e-8,
        ..QuadratureConfig::default()
    };
    for &p in &[4.0, 8.0, 16.0] {
        let numeric =
            lt_forward_numeric(|t| d.closed_form_inverse(t, &cfg).unwrap(), p, &quad).unwrap();
        let exact = lt_eval_real(&d, p).unwrap();
        assert!(
            (numeric - exact).abs() <= 1e-8 * exact,
            "p={p}: {numeric} {exact}"
        );
    }
}

#[test]
fn out_of_region_is_refused() {
    let d = TransformDescriptor::LaplaceDensity { beta: 1.0 };
    assert!(lt_eval_real(&d, 1.5).is_err());
    assert!(lt_eval_real(
        &TransformDescriptor::GammaPower {
            alpha: 1.0,
            beta: 1.0
        },
        -1.0
    )
    .is_err());
}
