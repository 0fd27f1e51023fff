//! Shared power-series driver: compensated summation, termination rule and
//! a running rounding-error estimate.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Truncation and safety settings for every power series in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SeriesConfig {
    /// A term counts as negligible once `|term| < rel_tol * |partial sum|`.
    pub rel_tol: f64,
    pub max_terms: usize,
    /// Terms below this magnitude count as negligible regardless of the sum.
    pub abs_floor: f64,
    /// Largest accepted `|z|` for Mittag-Leffler and Wright arguments.
    pub domain_bound: f64,
    /// Largest accepted rounding-error estimate relative to the result.
    pub cancellation_tol: f64,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-14,
            max_terms: 10_000,
            abs_floor: 1e-300,
            domain_bound: 50.0,
            cancellation_tol: 1e-6,
        }
    }
}

impl SeriesConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol < 1.0) {
            return Err(Error::domain(format!(
                "rel_tol must lie in (0, 1), got {}",
                self.rel_tol
            )));
        }
        if self.max_terms == 0 {
            return Err(Error::domain("max_terms must be at least 1"));
        }
        if !(self.abs_floor > 0.0) {
            return Err(Error::domain("abs_floor must be positive"));
        }
        if !(self.domain_bound > 0.0) {
            return Err(Error::domain("domain_bound must be positive"));
        }
        if !(self.cancellation_tol > 0.0) {
            return Err(Error::domain("cancellation_tol must be positive"));
        }
        Ok(())
    }

    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_max_terms(mut self, max_terms: usize) -> Self {
        self.max_terms = max_terms;
        self
    }

    pub fn with_domain_bound(mut self, bound: f64) -> Self {
        self.domain_bound = bound;
        self
    }

    pub(crate) fn check_argument(&self, z: f64) -> Result<()> {
        if !z.is_finite() {
            return Err(Error::domain(format!("non-finite series argument {z}")));
        }
        if z.abs() > self.domain_bound {
            return Err(Error::domain(format!(
                "|z| = {} exceeds the series domain bound {}",
                z.abs(),
                self.domain_bound
            )));
        }
        Ok(())
    }
}

/// A summed series together with its bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    /// Estimated absolute rounding error of `value`.
    pub error_estimate: f64,
    /// Number of terms generated.
    pub terms: usize,
}

pub(crate) enum Term {
    /// A term and its estimated relative rounding error.
    Value { value: f64, rel_err: f64 },
    /// Exactly zero because a reciprocal gamma hit a pole; does not count
    /// towards termination.
    PoleZero,
    /// Every remaining term vanishes.
    End,
}

/// Results smaller than this are judged against it, not against themselves.
const CANCELLATION_FLOOR: f64 = 1e-4;

/// Consecutive negligible terms required before stopping.
const NEGLIGIBLE_RUN: usize = 3;

pub(crate) fn sum_series(
    cfg: &SeriesConfig,
    mut next: impl FnMut(usize) -> Term,
) -> Result<SeriesValue> {
    let mut sum = 0.0_f64;
    let mut comp = 0.0_f64;
    let mut term_err = 0.0_f64;
    let mut run = 0usize;
    let mut prev_mag = f64::INFINITY;
    let mut last = 0.0;

    for k in 0..cfg.max_terms {
        let (value, rel_err) = match next(k) {
            Term::End => return finish(cfg, sum + comp, term_err, k),
            Term::PoleZero => continue,
            Term::Value { value, rel_err } => (value, rel_err),
        };
        if !value.is_finite() {
            return Err(Error::domain(format!("series term {k} is not finite")));
        }
        // Neumaier
        let t = sum + value;
        if sum.abs() >= value.abs() {
            comp += (sum - t) + value;
        } else {
            comp += (value - t) + sum;
        }
        sum = t;
        last = value;

        let mag = value.abs();
        term_err += mag * rel_err;

        let current = (sum + comp).abs();
        let negligible = mag < cfg.rel_tol * current || mag < cfg.abs_floor;
        if negligible && mag <= prev_mag {
            run += 1;
            if run >= NEGLIGIBLE_RUN {
                return finish(cfg, sum + comp, term_err, k + 1);
            }
        } else {
            run = 0;
        }
        prev_mag = mag;
    }
    Err(Error::NonConvergence {
        terms: cfg.max_terms,
        last_term: last,
        partial_sum: sum + comp,
    })
}

impl SeriesConfig {
    /// The same settings with the cancellation check switched off, for
    /// series that are only parts of a larger sum; the caller checks the
    /// total with [`check_precision`].
    pub(crate) fn for_parts(&self) -> Self {
        Self {
            cancellation_tol: f64::INFINITY,
            ..*self
        }
    }
}

/// `PrecisionLoss` when the accumulated rounding error is too large a
/// fraction of `value`.
pub(crate) fn check_precision(cfg: &SeriesConfig, value: f64, error_estimate: f64) -> Result<()> {
    if error_estimate > cfg.cancellation_tol * value.abs().max(CANCELLATION_FLOOR) {
        return Err(Error::PrecisionLoss {
            value,
            error_estimate,
        });
    }
    Ok(())
}

fn finish(cfg: &SeriesConfig, value: f64, term_err: f64, terms: usize) -> Result<SeriesValue> {
    let error_estimate = term_err + 2.0 * f64::EPSILON * value.abs();
    check_precision(cfg, value, error_estimate)?;
    Ok(SeriesValue {
        value,
        error_estimate,
        terms,
    })
}
