//! Hartley-Lorenzo F- and R-functions.
//!
//! Each has two evaluation routes: through [`ml_eval`] and through its own
//! power series. Both are public so the identities can be checked.

use super::gamma::{is_gamma_pole, recip_gamma};
use super::mittag_leffler::{ml_eval, MLParams};
use super::series::{sum_series, SeriesConfig, Term};
use crate::error::{Error, Result};

/// F_q(-a, t) = t^{q-1} E_{q,q}(-a t^q)
pub fn f_function(q: f64, a: f64, t: f64, cfg: &SeriesConfig) -> Result<f64> {
    check_f(q, t)?;
    let e = ml_eval(&MLParams::two(q, q)?, -a * t.powf(q), cfg)?;
    Ok(t.powf(q - 1.0) * e)
}

/// F_q(-a, t) = Σ (-a)^n t^{(n+1)q-1} / Γ(q + nq)
pub fn f_function_series(q: f64, a: f64, t: f64, cfg: &SeriesConfig) -> Result<f64> {
    check_f(q, t)?;
    cfg.validate()?;
    cfg.check_argument(a * t.powf(q))?;
    sum_series(cfg, |n| {
        let n_f = n as f64;
        let x = q + n_f * q;
        if a == 0.0 && n > 0 {
            return Term::End;
        }
        Term::Value {
            value: (-a).powi(n as i32) * t.powf((n_f + 1.0) * q - 1.0) * recip_gamma(x),
            rel_err: (6.0 + n_f) * f64::EPSILON,
        }
    })
    .map(|v| v.value)
}

fn check_f(q: f64, t: f64) -> Result<()> {
    if !(q > 0.0) {
        return Err(Error::domain(format!("F-function needs q > 0, got {q}")));
    }
    if !(t > 0.0) {
        return Err(Error::domain(format!("F-function needs t > 0, got {t}")));
    }
    Ok(())
}

/// R_{ν,μ}(a, δ, t) = (t-δ)^{ν-μ-1} E_{ν,ν-μ}[a (t-δ)^ν] for t > δ > 0.
pub fn r_function(nu: f64, mu: f64, a: f64, delta: f64, t: f64, cfg: &SeriesConfig) -> Result<f64> {
    check_r(nu, mu, delta, t)?;
    let s = t - delta;
    let e = ml_eval(&MLParams::two(nu, nu - mu)?, a * s.powf(nu), cfg)?;
    Ok(s.powf(nu - mu - 1.0) * e)
}

/// R_{ν,μ}(a, δ, t) = Σ a^n (t-δ)^{(n+1)ν-μ-1} / Γ[(n+1)ν - μ]
pub fn r_function_series(
    nu: f64,
    mu: f64,
    a: f64,
    delta: f64,
    t: f64,
    cfg: &SeriesConfig,
) -> Result<f64> {
    check_r(nu, mu, delta, t)?;
    cfg.validate()?;
    let s = t - delta;
    cfg.check_argument(a * s.powf(nu))?;
    sum_series(cfg, |n| {
        let n_f = n as f64;
        let x = (n_f + 1.0) * nu - mu;
        if a == 0.0 && n > 0 {
            return Term::End;
        }
        if is_gamma_pole(x) {
            return Term::PoleZero;
        }
        Term::Value {
            value: a.powi(n as i32) * s.powf(x - 1.0) * recip_gamma(x),
            rel_err: (6.0 + n_f) * f64::EPSILON,
        }
    })
    .map(|v| v.value)
}

fn check_r(nu: f64, mu: f64, delta: f64, t: f64) -> Result<()> {
    if !(nu > 0.0) {
        return Err(Error::domain(format!("R-function needs nu > 0, got {nu}")));
    }
    if !(nu - mu > 0.0) {
        return Err(Error::domain(format!(
            "R-function needs nu - mu > 0, got {}",
            nu - mu
        )));
    }
    if !(delta > 0.0 && t > delta) {
        return Err(Error::domain(format!(
            "R-function needs t > delta > 0, got t={t}, delta={delta}"
        )));
    }
    Ok(())
}
