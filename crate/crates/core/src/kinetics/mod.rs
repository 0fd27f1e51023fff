//! Closed-form solutions of the fractional kinetic equations
//!
//! ```text
//! N(t) - source(t) = -c^ν ₀D_t^{-ν} N(t)
//! ```
//!
//! for the constant, power, Mittag-Leffler and two-rate sources, plus the
//! series inversion of three-term transforms.

mod three_term;

pub use three_term::{
    invert_three_term, ThreeTermNumerator, ThreeTermTransform, DEFAULT_OUTER_TERMS,
};

use crate::error::{Error, Result};
use crate::laplace::TransformDescriptor;
use crate::special_functions::gamma::gamma;
use crate::special_functions::gamma::recip_gamma;
use crate::special_functions::series::{check_precision, sum_series, Term};
use crate::special_functions::{ml_eval, ml_eval_detailed, MLParams, SeriesConfig, SeriesValue};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Rates count as equal when |c^ν - d^ν| falls below this fraction of the
/// larger one.
pub const TIE_REL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KineticKind {
    /// source N₀
    Basic,
    /// source N₀ t^{μ-1}
    PowerSource,
    /// source N₀ t^{μ-1} E^γ_{ν,μ}(-c^ν t^ν)
    #[serde(alias = "ml-gamma-source")]
    MlGammaSource,
    /// source N₀ t^{μ-1} E_{ν,μ}(-c^ν t^ν)
    #[serde(alias = "ml-source")]
    MlSource,
    /// source N₀ t^{μ-1} E_{ν,μ}(-d^ν t^ν)
    TwoRate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KineticProblem {
    pub kind: KineticKind,
    #[serde(alias = "N0")]
    pub n0: f64,
    pub c: f64,
    pub nu: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
}

fn require(name: &str, v: Option<f64>, kind: KineticKind) -> Result<f64> {
    v.ok_or_else(|| Error::domain(format!("{kind:?} problem needs `{name}`")))
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "{name} must be positive and finite, got {v}"
        )))
    }
}

impl KineticProblem {
    pub fn basic(n0: f64, c: f64, nu: f64) -> Self {
        Self {
            kind: KineticKind::Basic,
            n0,
            c,
            nu,
            d: None,
            mu: None,
            gamma: None,
        }
    }

    pub fn power_source(n0: f64, c: f64, nu: f64, mu: f64) -> Self {
        Self {
            kind: KineticKind::PowerSource,
            mu: Some(mu),
            ..Self::basic(n0, c, nu)
        }
    }

    pub fn ml_gamma_source(n0: f64, c: f64, nu: f64, mu: f64, gamma: f64) -> Self {
        Self {
            kind: KineticKind::MlGammaSource,
            mu: Some(mu),
            gamma: Some(gamma),
            ..Self::basic(n0, c, nu)
        }
    }

    pub fn ml_source(n0: f64, c: f64, nu: f64, mu: f64) -> Self {
        Self {
            kind: KineticKind::MlSource,
            mu: Some(mu),
            ..Self::basic(n0, c, nu)
        }
    }

    pub fn two_rate(n0: f64, c: f64, d: f64, nu: f64, mu: f64) -> Self {
        Self {
            kind: KineticKind::TwoRate,
            d: Some(d),
            mu: Some(mu),
            ..Self::basic(n0, c, nu)
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.n0.is_finite() || self.n0 < 0.0 {
            return Err(Error::domain(format!(
                "n0 must be non-negative and finite, got {}",
                self.n0
            )));
        }
        positive("c", self.c)?;
        positive("nu", self.nu)?;
        let needs_mu = self.kind != KineticKind::Basic;
        let needs_d = self.kind == KineticKind::TwoRate;
        let needs_gamma = self.kind == KineticKind::MlGammaSource;
        for (name, present, needed) in [
            ("mu", self.mu.is_some(), needs_mu),
            ("d", self.d.is_some(), needs_d),
            ("gamma", self.gamma.is_some(), needs_gamma),
        ] {
            if present && !needed {
                return Err(Error::domain(format!(
                    "`{name}` is not a parameter of a {:?} problem",
                    self.kind
                )));
            }
        }
        if needs_mu {
            positive("mu", require("mu", self.mu, self.kind)?)?;
        }
        if needs_d {
            positive("d", require("d", self.d, self.kind)?)?;
        }
        if needs_gamma {
            let g = require("gamma", self.gamma, self.kind)?;
            if !g.is_finite() || g + 1.0 == 0.0 {
                return Err(Error::domain(format!(
                    "gamma must be finite and not -1, got {g}"
                )));
            }
        }
        Ok(())
    }

    fn mu(&self) -> f64 {
        self.mu.unwrap_or(1.0)
    }

    /// Laplace transform of the solution.
    pub fn transform(&self) -> Result<TransformDescriptor> {
        self.validate()?;
        let (n0, c, nu, mu) = (self.n0, self.c, self.nu, self.mu());
        Ok(match self.kind {
            KineticKind::Basic => TransformDescriptor::MlBasic { n0, c, nu },
            KineticKind::PowerSource => TransformDescriptor::MlGeneral {
                n0: n0 * gamma(mu),
                c,
                nu,
                mu,
                gamma: 0.0,
            },
            KineticKind::MlGammaSource => TransformDescriptor::MlGeneral {
                n0,
                c,
                nu,
                mu,
                gamma: self.gamma.unwrap(),
            },
            KineticKind::MlSource => TransformDescriptor::MlGeneral {
                n0,
                c,
                nu,
                mu,
                gamma: 1.0,
            },
            KineticKind::TwoRate => TransformDescriptor::TwoRateProduct {
                n0,
                c,
                d: self.d.unwrap(),
                nu,
                mu,
            },
        })
    }

    /// The inhomogeneous term of the integral equation at t > 0.
    pub fn source(&self, t: f64, cfg: &SeriesConfig) -> Result<f64> {
        self.validate()?;
        let (n0, nu, mu) = (self.n0, self.nu, self.mu());
        let ml = |gam: f64, rate: f64| -> Result<f64> {
            let e = ml_eval(&MLParams::new(nu, mu, gam)?, -rate * t.powf(nu), cfg)?;
            Ok(n0 * t.powf(mu - 1.0) * e)
        };
        match self.kind {
            KineticKind::Basic => Ok(n0),
            KineticKind::PowerSource => Ok(n0 * t.powf(mu - 1.0)),
            KineticKind::MlGammaSource => ml(self.gamma.unwrap(), self.c.powf(nu)),
            KineticKind::MlSource => ml(1.0, self.c.powf(nu)),
            KineticKind::TwoRate => ml(1.0, self.d.unwrap().powf(nu)),
        }
    }
}

/// weight · t^power · E^γ_{ν,μ}(-rate · t^ν)
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolutionTerm {
    pub weight: f64,
    pub power: f64,
    pub ml: MLParams,
    pub rate: f64,
}

impl SolutionTerm {
    pub fn eval(&self, t: f64, cfg: &SeriesConfig) -> Result<f64> {
        let v = self.eval_detailed(t, cfg)?;
        check_precision(cfg, v.value, v.error_estimate)?;
        Ok(v.value)
    }

    /// Value and rounding-error estimate, without the cancellation check.
    pub fn eval_detailed(&self, t: f64, cfg: &SeriesConfig) -> Result<SeriesValue> {
        if self.weight == 0.0 {
            return Ok(SeriesValue {
                value: 0.0,
                error_estimate: 0.0,
                terms: 0,
            });
        }
        let e = ml_eval_detailed(&self.ml, -self.rate * t.powf(self.ml.nu), &cfg.for_parts())?;
        let scale = self.weight * t.powf(self.power);
        Ok(SeriesValue {
            value: scale * e.value,
            error_estimate: scale.abs() * e.error_estimate,
            terms: e.terms,
        })
    }
}

/// Below this value of max(C, D) t^ν the two-rate power series is used.
const SHORT_TIME_ARG: f64 = 1.0;

/// N₀ t^{μ-1} Σ_k (-t^ν)^k h_k / Γ(μ + νk) with h_k = Σ_{j≤k} C^j D^{k-j}:
/// the two-rate solution expanded directly in powers of t. Free of the
/// cancellation between the partial-fraction terms as t → 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoRateShortTime {
    pub n0: f64,
    /// c^ν
    pub c_nu: f64,
    /// d^ν
    pub d_nu: f64,
    pub nu: f64,
    pub mu: f64,
}

impl TwoRateShortTime {
    fn applies(&self, t: f64) -> bool {
        self.c_nu.max(self.d_nu) * t.powf(self.nu) <= SHORT_TIME_ARG
    }

    pub fn eval_detailed(&self, t: f64, cfg: &SeriesConfig) -> Result<SeriesValue> {
        let TwoRateShortTime {
            n0,
            c_nu,
            d_nu,
            nu,
            mu,
        } = *self;
        let x = -t.powf(nu);
        let (mut h, mut c_pow, mut x_pow) = (0.0, 1.0, 1.0);
        let s = sum_series(&cfg.for_parts(), |k| {
            if k > 0 {
                c_pow *= c_nu;
                x_pow *= x;
            }
            h = d_nu * h + c_pow;
            Term::Value {
                value: x_pow * h * recip_gamma(mu + nu * k as f64),
                rel_err: (4.0 + 2.0 * k as f64) * f64::EPSILON,
            }
        })?;
        let scale = n0 * t.powf(mu - 1.0);
        Ok(SeriesValue {
            value: scale * s.value,
            error_estimate: scale.abs() * s.error_estimate,
            terms: s.terms,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionSeries {
    pub terms: Vec<SolutionTerm>,
    /// Set when a special branch was taken, e.g. equal rates.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// Used instead of `terms` at short times, where they cancel.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub short_time: Option<TwoRateShortTime>,
}

impl SolutionSeries {
    pub fn eval(&self, t: f64, cfg: &SeriesConfig) -> Result<f64> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::domain(format!(
                "solutions are evaluated for t > 0, got {t}"
            )));
        }
        if let Some(st) = self.short_time.filter(|st| st.applies(t)) {
            let v = st.eval_detailed(t, cfg)?;
            check_precision(cfg, v.value, v.error_estimate)?;
            return Ok(v.value);
        }
        let (mut sum, mut err) = (0.0, 0.0);
        for term in &self.terms {
            let v = term.eval_detailed(t, cfg)?;
            sum += v.value;
            err += v.error_estimate;
        }
        check_precision(cfg, sum, err)?;
        Ok(sum)
    }

    pub fn eval_grid(&self, ts: &[f64], cfg: &SeriesConfig) -> Result<Vec<f64>> {
        ts.iter().map(|&t| self.eval(t, cfg)).collect()
    }
}

fn single(weight: f64, power: f64, ml: MLParams, rate: f64) -> SolutionSeries {
    SolutionSeries {
        terms: vec![SolutionTerm {
            weight,
            power,
            ml,
            rate,
        }],
        note: None,
        short_time: None,
    }
}

/// The production–destruction equation with distinct input and output
/// rates: N(t) - N₀ t^{μ-1} E_{ν,μ}(-d^ν t^ν) = -c^ν ₀D_t^{-ν} N(t).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoRate {
    pub n0: f64,
    pub c: f64,
    pub d: f64,
    pub nu: f64,
    pub mu: f64,
}

impl TwoRate {
    /// Partial fractions split the transform into two single-rate pieces
    /// with weights ±N₀/(c^ν - d^ν) and power μ - ν - 1. Near a tie the
    /// split cancels catastrophically and the equal-rate form
    /// N₀ t^{μ-1} E²_{ν,μ}(-c^ν t^ν) is returned instead. At short times
    /// the two pieces cancel as well, and evaluation switches to
    /// [`TwoRateShortTime`].
    ///
    /// μ ≤ ν is accepted: E_{ν,μ-ν} is still entire, the early terms just
    /// have reciprocal-gamma zeros.
    pub fn solution(&self) -> Result<SolutionSeries> {
        let TwoRate { n0, c, d, nu, mu } = *self;
        KineticProblem::two_rate(n0, c, d, nu, mu).validate()?;
        let (cn, dn) = (c.powf(nu), d.powf(nu));
        let short_time = Some(TwoRateShortTime {
            n0,
            c_nu: cn,
            d_nu: dn,
            nu,
            mu,
        });
        let gap = cn - dn;
        if gap.abs() < TIE_REL_TOL * cn.max(dn) {
            let mut s = single(n0, mu - 1.0, MLParams::new(nu, mu, 2.0)?, cn.max(dn));
            s.note = Some(format!(
                "equal-rate branch: |c^nu - d^nu| = {:e}",
                gap.abs()
            ));
            s.short_time = short_time;
            return Ok(s);
        }
        let ml = MLParams::extended(nu, mu - nu, 1.0)?;
        let power = mu - nu - 1.0;
        Ok(SolutionSeries {
            terms: vec![
                SolutionTerm {
                    weight: n0 / gap,
                    power,
                    ml,
                    rate: dn,
                },
                SolutionTerm {
                    weight: -n0 / gap,
                    power,
                    ml,
                    rate: cn,
                },
            ],
            note: None,
            short_time,
        })
    }
}

/// Closed-form solution of a kinetic problem.
pub fn solve(problem: &KineticProblem) -> Result<SolutionSeries> {
    problem.validate()?;
    let (n0, c, nu, mu) = (problem.n0, problem.c, problem.nu, problem.mu());
    let rate = c.powf(nu);
    Ok(match problem.kind {
        KineticKind::Basic => single(n0, 0.0, MLParams::classical(nu)?, rate),
        KineticKind::PowerSource => single(n0 * gamma(mu), mu - 1.0, MLParams::two(nu, mu)?, rate),
        KineticKind::MlGammaSource => single(
            n0,
            mu - 1.0,
            MLParams::new(nu, mu, problem.gamma.unwrap() + 1.0)?,
            rate,
        ),
        KineticKind::MlSource => {
            // t^{μ-1} E²_{ν,μ} = (t^{μ-1}/ν) [E_{ν,μ-1} + (1 - μ + ν) E_{ν,μ}]
            let power = mu - 1.0;
            SolutionSeries {
                terms: vec![
                    SolutionTerm {
                        weight: n0 / nu,
                        power,
                        ml: MLParams::extended(nu, mu - 1.0, 1.0)?,
                        rate,
                    },
                    SolutionTerm {
                        weight: n0 * (1.0 - mu + nu) / nu,
                        power,
                        ml: MLParams::two(nu, mu)?,
                        rate,
                    },
                ],
                note: None,
                short_time: None,
            }
        }
        KineticKind::TwoRate => TwoRate {
            n0,
            c,
            d: problem.d.unwrap(),
            nu,
            mu,
        }
        .solution()?,
    })
}

/// Both sides of 1/((p^ν + c^ν)(p^ν + d^ν)) = [1/(p^ν + d^ν) - 1/(p^ν + c^ν)] / (c^ν - d^ν).
pub fn partial_fraction_split(
    c: f64,
    d: f64,
    nu: f64,
    p: Complex64,
) -> Result<(Complex64, Complex64)> {
    positive("c", c)?;
    positive("d", d)?;
    positive("nu", nu)?;
    let (cn, dn) = (c.powf(nu), d.powf(nu));
    let gap = cn - dn;
    if gap.abs() < TIE_REL_TOL * cn.max(dn) {
        return Err(Error::Tie { gap: gap.abs() });
    }
    let pn = p.powf(nu);
    let lhs = 1.0 / ((pn + cn) * (pn + dn));
    let rhs = (1.0 / (pn + dn) - 1.0 / (pn + cn)) / gap;
    Ok((lhs, rhs))
}
