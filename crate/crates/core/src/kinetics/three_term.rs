//! Inversion of p^{α-1} / (p^α + a p^β + b) and p^{β-1} / (p^α + a p^β + b).
//!
//! Expanding in a p^β / (p^α + b) gives an outer series of generalized
//! Mittag-Leffler functions:
//!
//! ```text
//! L₃: Σ_r (-a)^r t^{(α-β)r}     E^{r+1}_{α,(α-β)r+1}(-b t^α)
//! L₄: Σ_r (-a)^r t^{(α-β)(r+1)} E^{r+1}_{α,(α-β)(r+1)+1}(-b t^α)
//! ```

use crate::error::{Error, Result};
use crate::special_functions::series::check_precision;
use crate::special_functions::{ml_eval_detailed, MLParams, SeriesConfig};
use serde::{Deserialize, Serialize};

pub const DEFAULT_OUTER_TERMS: usize = 64;

/// |a| t^{α-β} above this is refused: the alternating outer series then
/// loses too many digits.
const OUTER_ARGUMENT_BOUND: f64 = 20.0;

/// Allowed size of the tail estimate relative to the sum.
const OUTER_TAIL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ThreeTermNumerator {
    /// numerator p^{α-1}
    AlphaMinusOne,
    /// numerator p^{β-1}
    BetaMinusOne,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThreeTermTransform {
    pub alpha: f64,
    pub beta: f64,
    pub a: f64,
    pub b: f64,
    pub numerator: ThreeTermNumerator,
}

impl ThreeTermTransform {
    pub fn new(
        alpha: f64,
        beta: f64,
        a: f64,
        b: f64,
        numerator: ThreeTermNumerator,
    ) -> Result<Self> {
        let tt = Self {
            alpha,
            beta,
            a,
            b,
            numerator,
        };
        tt.validate()?;
        Ok(tt)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha.is_finite() && self.beta >= 0.0 && self.alpha > self.beta) {
            return Err(Error::domain(format!(
                "three-term transform needs alpha > beta >= 0, got {}, {}",
                self.alpha, self.beta
            )));
        }
        if !self.a.is_finite() || !self.b.is_finite() {
            return Err(Error::domain("three-term coefficients must be finite"));
        }
        Ok(())
    }
}

/// Time-domain inverse of a three-term transform at t > 0, summing at most
/// `outer_terms` outer terms.
pub fn invert_three_term(
    tt: &ThreeTermTransform,
    t: f64,
    outer_terms: usize,
    cfg: &SeriesConfig,
) -> Result<f64> {
    tt.validate()?;
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::domain(format!(
            "three-term inversion needs t > 0, got {t}"
        )));
    }
    if outer_terms == 0 {
        return Err(Error::domain("outer_terms must be positive"));
    }
    let ThreeTermTransform {
        alpha,
        beta,
        a,
        b,
        numerator,
    } = *tt;
    let gap = alpha - beta;
    let x = a.abs() * t.powf(gap);
    if x > OUTER_ARGUMENT_BOUND {
        return Err(Error::domain(format!(
            "|a| t^(alpha-beta) = {x} exceeds {OUTER_ARGUMENT_BOUND}; the outer series is unreliable"
        )));
    }
    let z = -b * t.powf(alpha);
    let shift = match numerator {
        ThreeTermNumerator::AlphaMinusOne => 0.0,
        ThreeTermNumerator::BetaMinusOne => 1.0,
    };
    let parts = cfg.for_parts();
    let mut sum = 0.0;
    let mut err = 0.0;
    let mut quiet = 0;
    for r in 0..outer_terms {
        let rf = r as f64;
        let power = gap * (rf + shift);
        let e = ml_eval_detailed(&MLParams::new(alpha, power + 1.0, rf + 1.0)?, z, &parts)?;
        let scale = a.abs().powi(r as i32) * t.powf(power);
        let term = (-a).powi(r as i32) * t.powf(power) * e.value;
        sum += term;
        err += scale * e.error_estimate;
        if a == 0.0 {
            break;
        }
        if term.abs() <= cfg.rel_tol * sum.abs() || term.abs() < cfg.abs_floor {
            quiet += 1;
            if quiet >= 2 {
                break;
            }
        } else {
            quiet = 0;
        }
        if r + 1 == outer_terms {
            let tail = 2.0 * term.abs();
            if tail > OUTER_TAIL_TOL * sum.abs().max(1e-3) {
                return Err(Error::NonConvergence {
                    terms: outer_terms,
                    last_term: term,
                    partial_sum: sum,
                });
            }
        }
    }
    check_precision(cfg, sum, err)?;
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special_functions::ml_eval;

    fn cfg() -> SeriesConfig {
        SeriesConfig::default()
    }

    /// Inverse of p/(p² + ap + b) and 1/(p² + ap + b) for the underdamped case.
    fn oscillator(a: f64, b: f64, t: f64) -> (f64, f64) {
        let w = (b - a * a / 4.0).sqrt();
        let env = (-a * t / 2.0).exp();
        let l4 = env * (w * t).sin() / w;
        let l3 = env * ((w * t).cos() - a / (2.0 * w) * (w * t).sin());
        (l3, l4)
    }

    #[test]
    fn zero_a_is_single_mittag_leffler() {
        let tt =
            ThreeTermTransform::new(1.5, 0.5, 0.0, 2.0, ThreeTermNumerator::AlphaMinusOne).unwrap();
        let v = invert_three_term(&tt, 1.3, DEFAULT_OUTER_TERMS, &cfg()).unwrap();
        let e = ml_eval(
            &MLParams::classical(1.5).unwrap(),
            -2.0 * 1.3f64.powf(1.5),
            &cfg(),
        )
        .unwrap();
        assert_eq!(v, e);
    }

    #[test]
    fn damped_oscillator() {
        let (a, b) = (0.6, 3.0);
        for &t in &[0.1, 0.8, 1.7, 3.0] {
            let (l3, l4) = oscillator(a, b, t);
            let alpha =
                ThreeTermTransform::new(2.0, 1.0, a, b, ThreeTermNumerator::AlphaMinusOne).unwrap();
            let beta =
                ThreeTermTransform::new(2.0, 1.0, a, b, ThreeTermNumerator::BetaMinusOne).unwrap();
            let v3 = invert_three_term(&alpha, t, DEFAULT_OUTER_TERMS, &cfg()).unwrap();
            let v4 = invert_three_term(&beta, t, DEFAULT_OUTER_TERMS, &cfg()).unwrap();
            assert!((v3 - l3).abs() < 1e-10, "t={t}: {v3} {l3}");
            assert!((v4 - l4).abs() < 1e-10, "t={t}: {v4} {l4}");
        }
    }

    #[test]
    fn guards() {
        assert!(
            ThreeTermTransform::new(1.0, 1.0, 0.0, 1.0, ThreeTermNumerator::AlphaMinusOne).is_err()
        );
        let tt = ThreeTermTransform::new(2.0, 1.0, 10.0, 1.0, ThreeTermNumerator::AlphaMinusOne)
            .unwrap();
        assert!(matches!(
            invert_three_term(&tt, 3.0, 64, &cfg()),
            Err(Error::Domain(_))
        ));
        let tt =
            ThreeTermTransform::new(2.0, 1.0, 3.0, 1.0, ThreeTermNumerator::AlphaMinusOne).unwrap();
        assert!(matches!(
            invert_three_term(&tt, 2.0, 3, &cfg()),
            Err(Error::NonConvergence { .. })
        ));
    }

    #[test]
    fn small_inner_terms_do_not_trip_precision_check() {
        // an inner series sits near a zero here while the total is O(0.1)
        let tt = ThreeTermTransform::new(
            1.1118423393338583,
            0.7821824543249937,
            0.1266832304220591,
            2.8893538267858005,
            ThreeTermNumerator::AlphaMinusOne,
        )
        .unwrap();
        assert!(invert_three_term(&tt, 3.0, DEFAULT_OUTER_TERMS, &cfg()).is_ok());
    }
}
