//! Forward Laplace transform by quadrature, and the adaptive
//! double-exponential driver shared with the two-sided inversion.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::cell::Cell;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuadratureConfig {
    /// Absolute error target for the whole integral, tail included.
    pub tol: f64,
    /// Upper limit of the finite part; `None` picks 40/p and extends it
    /// until the tail bound is met.
    pub t_cut: Option<f64>,
    /// Maximum bisection depth of the adaptive driver.
    pub max_depth: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            tol: 1e-11,
            t_cut: None,
            max_depth: 14,
        }
    }
}

/// ∫_a^b f by tanh-sinh quadrature with bisection until the error estimate
/// meets `tol`. Integrable endpoint singularities at `a` are fine.
pub(crate) fn integrate_adaptive(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    tol: f64,
    depth: usize,
) -> Result<f64> {
    let bad = Cell::new(None::<f64>);
    let guarded = |x: f64| {
        let v = f(x);
        if !v.is_finite() {
            bad.set(Some(x));
        }
        v
    };
    let out = quadrature::double_exponential::integrate(guarded, a, b, tol);
    if let Some(x) = bad.get() {
        return Err(Error::QuadratureFailure(format!(
            "integrand is not finite at {x}"
        )));
    }
    if out.error_estimate <= tol {
        return Ok(out.integral);
    }
    if depth == 0 {
        return Err(Error::QuadratureFailure(format!(
            "error estimate {:e} above {tol:e} on [{a}, {b}] at maximum depth",
            out.error_estimate
        )));
    }
    let mid = 0.5 * (a + b);
    Ok(integrate_adaptive(f, a, mid, 0.5 * tol, depth - 1)?
        + integrate_adaptive(f, mid, b, 0.5 * tol, depth - 1)?)
}

/// ∫₀^∞ e^{-pt} f(t) dt for p > 0.
///
/// The integral is cut at T where the tail bound |f(T)| e^{-pT} / p falls
/// below half the tolerance; this assumes f grows at most polynomially
/// beyond T.
pub fn lt_forward_numeric(f: impl Fn(f64) -> f64, p: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::domain(format!(
            "forward transform needs p > 0, got {p}"
        )));
    }
    if !(cfg.tol > 0.0) {
        return Err(Error::domain("quadrature tolerance must be positive"));
    }
    let tail_bound = |t_cut: f64| f(t_cut).abs() * (-p * t_cut).exp() / p;
    let mut t_cut = cfg.t_cut.unwrap_or(40.0 / p);
    if cfg.t_cut.is_none() {
        let mut grown = 0;
        while !(tail_bound(t_cut) <= 0.5 * cfg.tol) {
            grown += 1;
            if grown > 8 {
                return Err(Error::QuadratureFailure(format!(
                    "tail bound {:e} still above tolerance at T = {t_cut}",
                    tail_bound(t_cut)
                )));
            }
            t_cut *= 1.5;
        }
    }
    let integrand = |t: f64| (-p * t).exp() * f(t);
    integrate_left_singular(&integrand, 0.0, t_cut, 0.5 * cfg.tol, cfg.max_depth)
}

/// Power of the substitution t = a + (b - a) u^m used by
/// [`integrate_left_singular`]; it turns (t - a)^λ with λ > -1 into a
/// bounded integrand whenever m(λ + 1) ≥ 1.
const GRADING_POWER: i32 = 6;

/// Like [`integrate_adaptive`] for integrands with an algebraic singularity
/// at `a`. The tanh-sinh rule alone stalls around 1e-6 there.
pub(crate) fn integrate_left_singular(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    tol: f64,
    depth: usize,
) -> Result<f64> {
    let m = GRADING_POWER as f64;
    let width = b - a;
    let g = |u: f64| {
        if u <= 0.0 {
            return 0.0;
        }
        let w = u.powi(GRADING_POWER - 1);
        f(a + width * w * u) * m * w * width
    };
    integrate_adaptive(&g, 0.0, 1.0, tol, depth)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_at_unit_rate() {
        let v = lt_forward_numeric(|t| (-t).exp(), 1.0, &QuadratureConfig::default()).unwrap();
        assert!((v - 0.5).abs() < 1e-10);
    }

    #[test]
    fn normalized_power_with_singularity() {
        // t^{μ-1}/Γ(μ) has transform p^{-μ}
        for &(mu, p) in &[(0.4, 1.5), (2.3, 0.7), (1.0, 3.0)] {
            let g = libm::tgamma(mu);
            let v = lt_forward_numeric(|t| t.powf(mu - 1.0) / g, p, &QuadratureConfig::default())
                .unwrap();
            assert!((v - p.powf(-mu)).abs() < 1e-9, "{mu} {p}: {v}");
        }
    }

    #[test]
    fn growth_faster_than_decay_fails() {
        let err =
            lt_forward_numeric(|t| (2.0 * t).exp(), 1.0, &QuadratureConfig::default()).unwrap_err();
        assert!(matches!(err, Error::QuadratureFailure(_)));
    }

    #[test]
    fn non_finite_samples_fail() {
        let err = lt_forward_numeric(
            |t| if t > 1.0 { f64::NAN } else { 1.0 },
            1.0,
            &QuadratureConfig::default(),
        );
        assert!(err.is_err());
    }
}
