//! Parameters of the Fox H-function and its Mellin-Barnes integrand
//!
//! ```text
//!          Π_{j≤m} Γ(b_j + B_j s) · Π_{j≤n} Γ(1 - a_j - A_j s)
//! g(s) = ─────────────────────────────────────────────────────────
//!        Π_{j>m} Γ(1 - b_j - B_j s) · Π_{j>n} Γ(a_j + A_j s)
//! ```
//!
//! Only the integrand is evaluated; the contour integral itself is not.

use super::gamma::{is_complex_gamma_pole, ln_gamma_complex};
use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Orders (m, n, p, q) with p = `upper.len()` and q = `lower.len()`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HFunctionParams {
    pub m: usize,
    pub n: usize,
    /// (a_j, A_j), j = 1..p
    pub upper: Vec<(f64, f64)>,
    /// (b_j, B_j), j = 1..q
    pub lower: Vec<(f64, f64)>,
}

/// Arguments closer than this to a non-positive integer are treated as poles.
const H_POLE_TOL: f64 = 1e-10;

impl HFunctionParams {
    pub fn new(m: usize, n: usize, upper: Vec<(f64, f64)>, lower: Vec<(f64, f64)>) -> Result<Self> {
        let h = Self { m, n, upper, lower };
        h.validate()?;
        Ok(h)
    }

    /// H^{1,1}_{1,2} representation of E_{α,β}(z), evaluated at -z:
    /// upper (0, 1); lower (0, 1), (1 - β, α).
    pub fn mittag_leffler(alpha: f64, beta: f64) -> Result<Self> {
        Self::new(
            1,
            1,
            vec![(0.0, 1.0)],
            vec![(0.0, 1.0), (1.0 - beta, alpha)],
        )
    }

    pub fn p(&self) -> usize {
        self.upper.len()
    }

    pub fn q(&self) -> usize {
        self.lower.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.n > self.p() {
            return Err(Error::domain(format!(
                "H-function needs n <= p, got n={} p={}",
                self.n,
                self.p()
            )));
        }
        if self.m > self.q() {
            return Err(Error::domain(format!(
                "H-function needs m <= q, got m={} q={}",
                self.m,
                self.q()
            )));
        }
        for &(c, scale) in self.upper.iter().chain(&self.lower) {
            if !c.is_finite() || !(scale > 0.0 && scale.is_finite()) {
                return Err(Error::domain(
                    "H-function needs finite shifts and positive scales",
                ));
            }
        }
        Ok(())
    }
}

/// g(s) of the Mellin-Barnes representation. A numerator pole is an error;
/// a denominator pole makes g(s) vanish.
pub fn h_integrand(params: &HFunctionParams, s: Complex64) -> Result<Complex64> {
    params.validate()?;
    let one = Complex64::new(1.0, 0.0);

    let numerator = params.lower[..params.m]
        .iter()
        .map(|&(b, bb)| b + bb * s)
        .chain(
            params.upper[..params.n]
                .iter()
                .map(|&(a, aa)| one - a - aa * s),
        );
    let denominator = params.lower[params.m..]
        .iter()
        .map(|&(b, bb)| one - b - bb * s)
        .chain(params.upper[params.n..].iter().map(|&(a, aa)| a + aa * s));

    let mut log = Complex64::new(0.0, 0.0);
    for arg in numerator {
        if is_complex_gamma_pole(arg, H_POLE_TOL) {
            return Err(Error::Pole(format!(
                "numerator gamma argument {arg} is a pole"
            )));
        }
        log += ln_gamma_complex(arg);
    }
    for arg in denominator {
        if is_complex_gamma_pole(arg, H_POLE_TOL) {
            return Ok(Complex64::new(0.0, 0.0));
        }
        log -= ln_gamma_complex(arg);
    }
    Ok(log.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special_functions::gamma::gamma_complex;

    #[test]
    fn single_factor_case() {
        let h = HFunctionParams::new(1, 0, vec![], vec![(0.5, 2.0)]).unwrap();
        let s = Complex64::new(0.3, 0.7);
        let g = h_integrand(&h, s).unwrap();
        let expected = gamma_complex(0.5 + 2.0 * s);
        assert!((g - expected).norm() < 1e-13 * expected.norm());
    }

    #[test]
    fn mittag_leffler_case_against_gamma_products() {
        let (alpha, beta) = (0.7, 1.4);
        let h = HFunctionParams::mittag_leffler(alpha, beta).unwrap();
        let s = Complex64::new(0.5, 0.0);
        let g = h_integrand(&h, s).unwrap();
        // Γ(s)Γ(1-s)/Γ(β - αs) at s = 1/2 is π / Γ(1.05)
        let expected = std::f64::consts::PI / libm::tgamma(beta - alpha * 0.5);
        assert!((g.re - expected).abs() < 1e-13 * expected);
        assert!(g.im.abs() < 1e-13);
    }

    #[test]
    fn conjugate_symmetry() {
        let h = HFunctionParams::new(
            2,
            1,
            vec![(0.3, 1.0), (0.8, 0.5)],
            vec![(0.1, 1.0), (0.4, 2.0), (1.2, 0.7)],
        )
        .unwrap();
        let s = Complex64::new(0.21, 1.3);
        let a = h_integrand(&h, s.conj()).unwrap();
        let b = h_integrand(&h, s).unwrap().conj();
        assert!((a - b).norm() < 1e-13 * b.norm());
    }

    #[test]
    fn poles() {
        let h = HFunctionParams::mittag_leffler(0.5, 1.0).unwrap();
        // Γ(s) at s = 0
        assert!(matches!(
            h_integrand(&h, Complex64::new(0.0, 0.0)),
            Err(Error::Pole(_))
        ));
        // Γ(1 - s) at s = 1
        assert!(matches!(
            h_integrand(&h, Complex64::new(1.0, 0.0)),
            Err(Error::Pole(_))
        ));
        // denominator Γ(β - αs) = Γ(1 - s/2) has a pole at s = 2
        let g = h_integrand(&h, Complex64::new(2.0, 0.0));
        assert!(
            matches!(g, Err(Error::Pole(_))),
            "Γ(1-s) is also singular at s = 2"
        );
        let h2 = HFunctionParams::new(1, 0, vec![], vec![(0.5, 1.0), (1.0, 0.5)]).unwrap();
        assert_eq!(
            h_integrand(&h2, Complex64::new(2.0, 0.0)).unwrap(),
            Complex64::new(0.0, 0.0)
        );
    }

    #[test]
    fn order_invariants() {
        assert!(HFunctionParams::new(2, 0, vec![], vec![(0.0, 1.0)]).is_err());
        assert!(HFunctionParams::new(0, 1, vec![], vec![]).is_err());
        assert!(HFunctionParams::new(1, 0, vec![], vec![(0.0, -1.0)]).is_err());
    }
}
