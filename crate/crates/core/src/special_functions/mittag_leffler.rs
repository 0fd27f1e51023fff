//! The three-parameter Mittag-Leffler family
//!
//! ```text
//! E^γ_{ν,μ}(z) = Σ_{k≥0} (γ)_k z^k / (k! Γ(μ + kν))
//! ```
//!
//! γ = 1 gives the two-parameter function E_{ν,μ}, and μ = γ = 1 the
//! classical E_ν. Terms are built from running products while they stay
//! representable and fall back to log-gamma arithmetic with sign tracking
//! when they do not.

use super::gamma::{is_gamma_pole, ln_gamma_signed, recip_gamma};
use super::series::{sum_series, SeriesConfig, SeriesValue, Term};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

const EPS: f64 = f64::EPSILON;

fn default_gamma() -> f64 {
    1.0
}

/// Parameters (ν, μ, γ) of E^γ_{ν,μ}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MLParams {
    pub nu: f64,
    pub mu: f64,
    #[serde(default = "default_gamma")]
    pub gamma: f64,
}

impl MLParams {
    /// Checked constructor: ν > 0, μ > 0, γ ≠ 0.
    pub fn new(nu: f64, mu: f64, gamma: f64) -> Result<Self> {
        let p = Self { nu, mu, gamma };
        p.validate()?;
        Ok(p)
    }

    /// E_{ν,μ}
    pub fn two(nu: f64, mu: f64) -> Result<Self> {
        Self::new(nu, mu, 1.0)
    }

    /// E_ν
    pub fn classical(nu: f64) -> Result<Self> {
        Self::new(nu, 1.0, 1.0)
    }

    /// Like [`MLParams::new`] but accepts any finite μ.
    ///
    /// 1/Γ is entire, so the series stays well defined for μ ≤ 0; closed-form
    /// solutions such as E_{ν,μ-1} need this.
    pub fn extended(nu: f64, mu: f64, gamma: f64) -> Result<Self> {
        let p = Self { nu, mu, gamma };
        p.validate_extended()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        self.validate_extended()?;
        if !(self.mu > 0.0) {
            return Err(Error::domain(format!(
                "mu must be positive, got {}",
                self.mu
            )));
        }
        Ok(())
    }

    pub fn validate_extended(&self) -> Result<()> {
        if !(self.nu > 0.0 && self.nu.is_finite()) {
            return Err(Error::domain(format!(
                "nu must be positive, got {}",
                self.nu
            )));
        }
        if !self.mu.is_finite() {
            return Err(Error::domain(format!("mu must be finite, got {}", self.mu)));
        }
        if self.gamma == 0.0 || !self.gamma.is_finite() {
            return Err(Error::domain(format!(
                "gamma must be finite and non-zero, got {}",
                self.gamma
            )));
        }
        Ok(())
    }
}

/// Rising factorial (γ)_k = γ(γ+1)...(γ+k-1), with (γ)_0 = 1.
pub fn pochhammer(gamma: f64, k: u32) -> f64 {
    (0..k).map(|i| gamma + i as f64).product()
}

/// E^γ_{ν,μ}(z) for real z.
pub fn ml_eval(params: &MLParams, z: f64, cfg: &SeriesConfig) -> Result<f64> {
    ml_eval_detailed(params, z, cfg).map(|v| v.value)
}

/// [`ml_eval`] with the rounding-error estimate and term count.
pub fn ml_eval_detailed(params: &MLParams, z: f64, cfg: &SeriesConfig) -> Result<SeriesValue> {
    params.validate_extended()?;
    cfg.validate()?;
    cfg.check_argument(z)?;
    let MLParams { nu, mu, gamma } = *params;

    // E_1 = exp: exact, and free of the cancellation the series suffers for z << 0
    if nu == 1.0 && mu == 1.0 && gamma == 1.0 {
        let value = z.exp();
        return Ok(SeriesValue {
            value,
            error_estimate: 2.0 * EPS * value,
            terms: 0,
        });
    }
    if z == 0.0 {
        return Ok(SeriesValue {
            value: recip_gamma(mu),
            error_estimate: 2.0 * EPS * recip_gamma(mu).abs(),
            terms: 1,
        });
    }

    // coef = (γ)_k z^k / k!, tracked both directly and as (log|coef|, sign)
    let mut coef = 1.0_f64;
    let mut log_coef = 0.0_f64;
    let mut sign = 1.0_f64;
    sum_series(cfg, |k| {
        if k > 0 {
            let factor = (gamma + (k - 1) as f64) / k as f64 * z;
            if factor == 0.0 {
                return Term::End;
            }
            coef *= factor;
            log_coef += factor.abs().ln();
            sign *= factor.signum();
        }
        let x = mu + k as f64 * nu;
        if is_gamma_pole(x) {
            return Term::PoleZero;
        }
        if coef.is_finite() && coef.abs() > 1e-280 && x < 170.0 {
            Term::Value {
                value: coef * recip_gamma(x),
                rel_err: (4.0 + 0.5 * k as f64) * EPS,
            }
        } else {
            let (lg, gsign) = ln_gamma_signed(x);
            let log_mag = log_coef - lg;
            Term::Value {
                value: sign * gsign * log_mag.exp(),
                rel_err: (4.0 + log_coef.abs() + lg.abs()) * EPS,
            }
        }
    })
}

/// The two-parameter series Σ z^k / Γ(μ + kν), summed term by term from
/// `powi` and the reciprocal gamma. Independent of the running-product path
/// in [`ml_eval`].
pub fn ml_two_param_series(nu: f64, mu: f64, z: f64, cfg: &SeriesConfig) -> Result<SeriesValue> {
    MLParams::extended(nu, mu, 1.0)?;
    cfg.validate()?;
    cfg.check_argument(z)?;
    if z == 0.0 {
        let v = recip_gamma(mu);
        return Ok(SeriesValue {
            value: v,
            error_estimate: 2.0 * EPS * v.abs(),
            terms: 1,
        });
    }
    sum_series(cfg, |k| {
        let x = mu + k as f64 * nu;
        if is_gamma_pole(x) {
            return Term::PoleZero;
        }
        let zk = z.powi(k as i32);
        let rg = recip_gamma(x);
        if zk.is_finite() && rg != 0.0 && (zk * rg).is_finite() && (zk * rg) != 0.0 {
            Term::Value {
                value: zk * rg,
                rel_err: (4.0 + k as f64) * EPS,
            }
        } else {
            let (lg, gsign) = ln_gamma_signed(x);
            let zsign = if z < 0.0 && k % 2 == 1 { -1.0 } else { 1.0 };
            let log_mag = k as f64 * z.abs().ln() - lg;
            Term::Value {
                value: zsign * gsign * log_mag.exp(),
                rel_err: (4.0 + log_mag.abs() + lg.abs()) * EPS,
            }
        }
    })
}
