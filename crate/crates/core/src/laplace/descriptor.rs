use crate::error::{Error, Result};
use crate::kinetics::{
    invert_three_term, ThreeTermNumerator, ThreeTermTransform, TwoRate, DEFAULT_OUTER_TERMS,
};
use crate::special_functions::gamma::{gamma, ln_gamma_signed};
use crate::special_functions::{ml_eval, MLParams, SeriesConfig};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A closed-form Laplace transform L(p).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TransformDescriptor {
    /// (1 + βp)^{-α}: the gamma density.
    GammaPower { alpha: f64, beta: f64 },
    /// (1 - β²p²)^{-1}: the two-sided Laplace density.
    LaplaceDensity { beta: f64 },
    /// Π_in (1 + β_i p)^{-α_i} · Π_out (1 - β_j p)^{-α_j}: the residual
    /// u = Σ inputs - Σ outputs of independent gamma variables. Pairs are (α, β).
    ResidualProduct {
        inputs: Vec<(f64, f64)>,
        outputs: Vec<(f64, f64)>,
    },
    /// N₀ / (p [1 + (c/p)^ν]).
    MlBasic { n0: f64, c: f64, nu: f64 },
    /// N₀ / (p^{μ-ν(γ+1)} (c^ν + p^ν)^{γ+1}). γ = 0 is the power-source
    /// transform N₀'/(p^{μ-ν}(p^ν + c^ν)) with N₀' = N₀Γ(μ).
    MlGeneral {
        n0: f64,
        c: f64,
        nu: f64,
        mu: f64,
        gamma: f64,
    },
    /// N₀ / (p^μ [1 + (c/p)^ν] [1 + (d/p)^ν]).
    TwoRateProduct {
        n0: f64,
        c: f64,
        d: f64,
        nu: f64,
        mu: f64,
    },
    /// p^{α-1} / (p^α + a p^β + b)
    ThreeTermAlpha {
        alpha: f64,
        beta: f64,
        a: f64,
        b: f64,
    },
    /// p^{β-1} / (p^α + a p^β + b)
    ThreeTermBeta {
        alpha: f64,
        beta: f64,
        a: f64,
        b: f64,
    },
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

fn finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} must be finite, got {v}")))
    }
}

/// Denominators smaller than this relative to their parts count as zero.
const POLE_REL_TOL: f64 = 1e-14;

impl TransformDescriptor {
    pub fn validate(&self) -> Result<()> {
        use TransformDescriptor::*;
        match self {
            GammaPower { alpha, beta } => {
                positive("alpha", *alpha)?;
                positive("beta", *beta)
            }
            LaplaceDensity { beta } => positive("beta", *beta),
            ResidualProduct { inputs, outputs } => {
                if inputs.is_empty() && outputs.is_empty() {
                    return Err(Error::domain("residual product needs at least one factor"));
                }
                for &(a, b) in inputs.iter().chain(outputs) {
                    positive("alpha", a)?;
                    positive("beta", b)?;
                }
                Ok(())
            }
            MlBasic { n0, c, nu } => {
                finite("n0", *n0)?;
                positive("c", *c)?;
                positive("nu", *nu)
            }
            MlGeneral {
                n0,
                c,
                nu,
                mu,
                gamma,
            } => {
                finite("n0", *n0)?;
                positive("c", *c)?;
                positive("nu", *nu)?;
                positive("mu", *mu)?;
                finite("gamma", *gamma)?;
                if *gamma + 1.0 == 0.0 {
                    return Err(Error::domain("gamma + 1 must be non-zero"));
                }
                Ok(())
            }
            TwoRateProduct { n0, c, d, nu, mu } => {
                finite("n0", *n0)?;
                positive("c", *c)?;
                positive("d", *d)?;
                positive("nu", *nu)?;
                positive("mu", *mu)
            }
            ThreeTermAlpha { alpha, beta, a, b } | ThreeTermBeta { alpha, beta, a, b } => {
                positive("alpha", *alpha)?;
                finite("beta", *beta)?;
                finite("a", *a)?;
                finite("b", *b)?;
                if !(*alpha > *beta && *beta >= 0.0) {
                    return Err(Error::domain(format!(
                        "three-term transform needs alpha > beta >= 0, got {alpha}, {beta}"
                    )));
                }
                Ok(())
            }
        }
    }

    /// Region of convergence of the defining Laplace integral.
    ///
    /// The gamma transform converges for Re(1 + βp) > 0 (on the real axis,
    /// 1 + βp > 0); two-sided transforms in their strip; everything else for
    /// Re p > 0.
    pub fn in_region_of_validity(&self, p: Complex64) -> bool {
        use TransformDescriptor::*;
        match self {
            GammaPower { beta, .. } => 1.0 + beta * p.re > 0.0,
            LaplaceDensity { beta } => beta * p.re.abs() < 1.0,
            ResidualProduct { inputs, outputs } => {
                let lo = inputs
                    .iter()
                    .map(|&(_, b)| -1.0 / b)
                    .fold(f64::NEG_INFINITY, f64::max);
                let hi = outputs
                    .iter()
                    .map(|&(_, b)| 1.0 / b)
                    .fold(f64::INFINITY, f64::min);
                p.re > lo && p.re < hi
            }
            _ => p.re > 0.0,
        }
    }

    /// True for transforms of two-sided densities with singularities in the
    /// right half-plane.
    pub fn is_two_sided(&self) -> bool {
        match self {
            TransformDescriptor::LaplaceDensity { .. } => true,
            TransformDescriptor::ResidualProduct { outputs, .. } => !outputs.is_empty(),
            _ => false,
        }
    }

    /// The time-domain function paired with this transform, for t > 0.
    pub fn closed_form_inverse(&self, t: f64, cfg: &SeriesConfig) -> Result<f64> {
        use TransformDescriptor::*;
        self.validate()?;
        if !(t > 0.0) {
            return Err(Error::domain(format!(
                "closed-form inverse needs t > 0, got {t}"
            )));
        }
        match self {
            GammaPower { alpha, beta } => Ok(gamma_density(*alpha, *beta, t)),
            LaplaceDensity { beta } => Ok((-t / beta).exp() / (2.0 * beta)),
            ResidualProduct { inputs, outputs } => {
                let same_scale = |v: &[(f64, f64)], b: f64| v.iter().all(|&(_, bj)| bj == b);
                match (inputs.as_slice(), outputs.as_slice()) {
                    ([], _) => Ok(0.0),
                    ([(_, b), ..], []) if same_scale(inputs, *b) => {
                        let shape: f64 = inputs.iter().map(|&(a, _)| a).sum();
                        Ok(gamma_density(shape, *b, t))
                    }
                    ([(a1, b1)], [(a2, b2)]) if *a1 == 1.0 && *a2 == 1.0 && b1 == b2 => {
                        Ok((-t / b1).exp() / (2.0 * b1))
                    }
                    _ => Err(Error::domain(
                        "no closed-form density for a general residual product; use the numeric inverse",
                    )),
                }
            }
            MlBasic { n0, c, nu } => {
                let e = ml_eval(&MLParams::classical(*nu)?, -(c * t).powf(*nu), cfg)?;
                Ok(n0 * e)
            }
            MlGeneral {
                n0,
                c,
                nu,
                mu,
                gamma,
            } => {
                let params = MLParams::extended(*nu, *mu, gamma + 1.0)?;
                let e = ml_eval(&params, -(c * t).powf(*nu), cfg)?;
                Ok(n0 * t.powf(mu - 1.0) * e)
            }
            TwoRateProduct { n0, c, d, nu, mu } => {
                let series = TwoRate {
                    n0: *n0,
                    c: *c,
                    d: *d,
                    nu: *nu,
                    mu: *mu,
                }
                .solution()?;
                series.eval(t, cfg)
            }
            ThreeTermAlpha { alpha, beta, a, b } => {
                let tt = ThreeTermTransform::new(
                    *alpha,
                    *beta,
                    *a,
                    *b,
                    ThreeTermNumerator::AlphaMinusOne,
                )?;
                invert_three_term(&tt, t, DEFAULT_OUTER_TERMS, cfg)
            }
            ThreeTermBeta { alpha, beta, a, b } => {
                let tt = ThreeTermTransform::new(
                    *alpha,
                    *beta,
                    *a,
                    *b,
                    ThreeTermNumerator::BetaMinusOne,
                )?;
                invert_three_term(&tt, t, DEFAULT_OUTER_TERMS, cfg)
            }
        }
    }
}

fn gamma_density(alpha: f64, beta: f64, t: f64) -> f64 {
    let (lg, _) = ln_gamma_signed(alpha);
    ((alpha - 1.0) * t.ln() - t / beta - alpha * beta.ln() - lg).exp()
}

/// Evaluate the closed-form transform inside its region of validity.
pub fn lt_eval(d: &TransformDescriptor, p: Complex64) -> Result<Complex64> {
    d.validate()?;
    if !d.in_region_of_validity(p) {
        return Err(Error::domain(format!(
            "p = {p} is outside the region of validity of {d:?}"
        )));
    }
    lt_eval_continued(d, p)
}

/// Real-axis convenience wrapper around [`lt_eval`].
pub fn lt_eval_real(d: &TransformDescriptor, p: f64) -> Result<f64> {
    lt_eval(d, Complex64::new(p, 0.0)).map(|v| v.re)
}

/// Analytic continuation of the transform to the plane cut along the
/// non-positive real axis (principal branch of every power). This is what
/// the inversion contour samples.
pub fn lt_eval_continued(d: &TransformDescriptor, p: Complex64) -> Result<Complex64> {
    use TransformDescriptor::*;
    let one = Complex64::new(1.0, 0.0);
    let on_cut = p.im == 0.0 && p.re <= 0.0;
    match d {
        GammaPower { alpha, beta } => {
            let base = one + beta * p;
            if base.im == 0.0 && base.re <= 0.0 {
                return Err(Error::domain(format!(
                    "p = {p} lies on the branch cut 1 + beta p <= 0"
                )));
            }
            Ok((-alpha * base.ln()).exp())
        }
        LaplaceDensity { beta } => {
            let den = one - beta * beta * p * p;
            check_pole(den, 1.0 + (beta * p).norm_sqr())?;
            Ok(one / den)
        }
        ResidualProduct { inputs, outputs } => {
            let mut log = Complex64::new(0.0, 0.0);
            for &(a, b) in inputs {
                let base = one + b * p;
                check_pole(base, 1.0 + (b * p).norm())?;
                log -= a * base.ln();
            }
            for &(a, b) in outputs {
                let base = one - b * p;
                check_pole(base, 1.0 + (b * p).norm())?;
                log -= a * base.ln();
            }
            Ok(log.exp())
        }
        _ if on_cut => Err(Error::domain(format!(
            "p = {p} lies on the branch cut of p^nu"
        ))),
        MlBasic { n0, c, nu } => {
            let pn = p.powf(*nu);
            let cn = c.powf(*nu);
            let den = pn + cn;
            check_pole(den, pn.norm() + cn)?;
            Ok(*n0 * p.powf(nu - 1.0) / den)
        }
        MlGeneral {
            n0,
            c,
            nu,
            mu,
            gamma,
        } => {
            // p^{-μ} (1 + c^ν p^{-ν})^{-(γ+1)}: the branch cut of the outer
            // power then stays inside the inversion contour
            let w = c.powf(*nu) * p.powf(-nu);
            let base = one + w;
            check_pole(base, 1.0 + w.norm())?;
            let g1 = gamma + 1.0;
            let outer = if g1.fract() == 0.0 && g1.abs() < 64.0 {
                base.powi(-(g1 as i32))
            } else {
                (-g1 * base.ln()).exp()
            };
            Ok(*n0 * p.powf(-mu) * outer)
        }
        TwoRateProduct { n0, c, d, nu, mu } => {
            let pn = p.powf(-nu);
            let fc = one + c.powf(*nu) * pn;
            let fd = one + d.powf(*nu) * pn;
            check_pole(fc, 1.0 + (c.powf(*nu) * pn).norm())?;
            check_pole(fd, 1.0 + (d.powf(*nu) * pn).norm())?;
            Ok(*n0 * p.powf(-mu) / (fc * fd))
        }
        ThreeTermAlpha { alpha, beta, a, b } => {
            let (den, scale) = three_term_denominator(p, *alpha, *beta, *a, *b);
            check_pole(den, scale)?;
            Ok(p.powf(alpha - 1.0) / den)
        }
        ThreeTermBeta { alpha, beta, a, b } => {
            let (den, scale) = three_term_denominator(p, *alpha, *beta, *a, *b);
            check_pole(den, scale)?;
            Ok(p.powf(beta - 1.0) / den)
        }
    }
}

fn three_term_denominator(p: Complex64, alpha: f64, beta: f64, a: f64, b: f64) -> (Complex64, f64) {
    let pa = p.powf(alpha);
    let pb = a * p.powf(beta);
    (pa + pb + b, pa.norm() + pb.norm() + b.abs())
}

fn check_pole(den: Complex64, scale: f64) -> Result<()> {
    if den.norm() <= POLE_REL_TOL * scale {
        Err(Error::Pole(format!(
            "transform denominator vanishes ({den})"
        )))
    } else {
        Ok(())
    }
}

/// Gamma transform of a power: ∫₀^∞ e^{-pt} t^{μ-1} dt = Γ(μ) p^{-μ}.
pub fn power_transform(mu: f64, p: f64) -> f64 {
    gamma(mu) * p.powf(-mu)
}
