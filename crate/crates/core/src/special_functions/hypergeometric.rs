//! Wright's generalized hypergeometric function, the confluent ₁F₁ series
//! and the Pochhammer-weighted Mittag-Leffler series g₁ whose Laplace image
//! is a ₁F₁.

use super::gamma::{is_gamma_pole, ln_gamma_signed, recip_gamma};
use super::series::{sum_series, SeriesConfig, Term};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

const EPS: f64 = f64::EPSILON;

/// Parameter lists of pψq: `upper` holds (a_j, A_j), `lower` holds (b_j, B_j).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WrightParams {
    pub upper: Vec<(f64, f64)>,
    pub lower: Vec<(f64, f64)>,
}

impl WrightParams {
    pub fn new(upper: Vec<(f64, f64)>, lower: Vec<(f64, f64)>) -> Result<Self> {
        let p = Self { upper, lower };
        p.validate()?;
        Ok(p)
    }

    /// The ₁ψ₁ representation of E_{α,β}: upper (1, 1), lower (β, α).
    pub fn mittag_leffler(alpha: f64, beta: f64) -> Result<Self> {
        Self::new(vec![(1.0, 1.0)], vec![(beta, alpha)])
    }

    /// 1 + Σ B_j − Σ A_j, which must be non-negative.
    pub fn convergence_margin(&self) -> f64 {
        1.0 + self.lower.iter().map(|&(_, b)| b).sum::<f64>()
            - self.upper.iter().map(|&(_, a)| a).sum::<f64>()
    }

    pub fn validate(&self) -> Result<()> {
        for &(x, y) in self.upper.iter().chain(&self.lower) {
            if !x.is_finite() || !y.is_finite() {
                return Err(Error::domain("Wright parameters must be finite"));
            }
        }
        let margin = self.convergence_margin();
        if margin < 0.0 {
            return Err(Error::domain(format!(
                "Wright convergence condition 1 + ΣB - ΣA >= 0 violated ({margin})"
            )));
        }
        Ok(())
    }
}

/// pψq(z) = Σ_k Π Γ(a_j + A_j k) / Π Γ(b_j + B_j k) · z^k / k!
pub fn wright_eval(params: &WrightParams, z: f64, cfg: &SeriesConfig) -> Result<f64> {
    params.validate()?;
    cfg.validate()?;
    cfg.check_argument(z)?;
    let ln_z = z.abs().ln();
    let mut upper_pole = None;
    let out = sum_series(cfg, |k| {
        let kf = k as f64;
        if k > 0 && z == 0.0 {
            return Term::End;
        }
        let mut log_mag = 0.0;
        let mut sign = 1.0;
        let mut log_budget = 0.0;
        for &(a, big_a) in &params.upper {
            let x = a + big_a * kf;
            if is_gamma_pole(x) {
                upper_pole = Some(x);
                return Term::End;
            }
            let (lg, s) = ln_gamma_signed(x);
            log_mag += lg;
            log_budget += lg.abs();
            sign *= s;
        }
        for &(b, big_b) in &params.lower {
            let x = b + big_b * kf;
            if is_gamma_pole(x) {
                return Term::PoleZero;
            }
            let (lg, s) = ln_gamma_signed(x);
            log_mag -= lg;
            log_budget += lg.abs();
            sign *= s;
        }
        if k > 0 {
            log_mag += kf * ln_z;
            if z < 0.0 && k % 2 == 1 {
                sign = -sign;
            }
            let lf = libm::lgamma(kf + 1.0);
            log_mag -= lf;
            log_budget += lf + (kf * ln_z).abs();
        }
        Term::Value {
            value: sign * log_mag.exp(),
            rel_err: (4.0 + log_budget) * EPS,
        }
    })?;
    if let Some(x) = upper_pole {
        return Err(Error::domain(format!(
            "Wright numerator gamma has a pole at {x}"
        )));
    }
    Ok(out.value)
}

/// Confluent hypergeometric ₁F₁(γ₁; β₁; x) = Σ (γ₁)_k / (β₁)_k · x^k / k!
pub fn hyp1f1(gamma1: f64, beta1: f64, x: f64, cfg: &SeriesConfig) -> Result<f64> {
    if is_gamma_pole(beta1) {
        return Err(Error::domain(format!(
            "1F1 lower parameter {beta1} is a non-positive integer"
        )));
    }
    cfg.validate()?;
    cfg.check_argument(x)?;
    let mut term = 1.0_f64;
    sum_series(cfg, |k| {
        if k > 0 {
            let kf = (k - 1) as f64;
            let factor = (gamma1 + kf) / (beta1 + kf) * x / k as f64;
            if factor == 0.0 {
                return Term::End;
            }
            term *= factor;
        }
        Term::Value {
            value: term,
            rel_err: (2.0 + 2.0 * k as f64) * EPS,
        }
    })
    .map(|v| v.value)
}

/// Parameters of g₁(x) = Σ (γ₁)_k / ((β₁)_k k!) · x^k / Γ(β + kα).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct G1Params {
    pub alpha: f64,
    pub beta: f64,
    pub gamma1: f64,
    pub beta1: f64,
}

pub fn g1_series(params: &G1Params, x: f64, cfg: &SeriesConfig) -> Result<f64> {
    let G1Params {
        alpha,
        beta,
        gamma1,
        beta1,
    } = *params;
    if !(alpha > 0.0) {
        return Err(Error::domain(format!("g1 needs alpha > 0, got {alpha}")));
    }
    if is_gamma_pole(beta1) {
        return Err(Error::domain(format!(
            "g1 lower parameter {beta1} is a non-positive integer"
        )));
    }
    cfg.validate()?;
    cfg.check_argument(x)?;
    let mut coef = 1.0_f64;
    sum_series(cfg, |k| {
        if k > 0 {
            let kf = (k - 1) as f64;
            let factor = (gamma1 + kf) / (beta1 + kf) * x / k as f64;
            if factor == 0.0 {
                return Term::End;
            }
            coef *= factor;
        }
        let g = beta + alpha * k as f64;
        if is_gamma_pole(g) {
            return Term::PoleZero;
        }
        Term::Value {
            value: coef * recip_gamma(g),
            rel_err: (4.0 + 2.0 * k as f64) * EPS,
        }
    })
    .map(|v| v.value)
}
