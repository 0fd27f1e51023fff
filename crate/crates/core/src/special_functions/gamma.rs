//! Real and complex gamma helpers.
//!
//! Real arguments go through `libm`; the complex log-gamma is a Lanczos
//! approximation (g = 7, nine coefficients) with reflection for Re z < 1/2.

use num_complex::Complex64;
use std::f64::consts::PI;

/// Distance from a non-positive integer below which an argument is treated
/// as sitting on a gamma pole.
pub const POLE_TOL: f64 = 1e-12;

/// `(ln|Γ(x)|, sign Γ(x))`. At poles the log is `+inf` and the sign is 0.
pub fn ln_gamma_signed(x: f64) -> (f64, f64) {
    if is_gamma_pole(x) {
        return (f64::INFINITY, 0.0);
    }
    let (lg, sign) = libm::lgamma_r(x);
    (lg, sign as f64)
}

pub fn is_gamma_pole(x: f64) -> bool {
    x <= 0.0 && (x - x.round()).abs() < POLE_TOL
}

pub fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

/// 1/Γ(x), an entire function: exactly zero on the poles of Γ.
pub fn recip_gamma(x: f64) -> f64 {
    if is_gamma_pole(x) {
        return 0.0;
    }
    if x < 170.0 {
        let g = libm::tgamma(x);
        if g.is_finite() && g != 0.0 {
            return 1.0 / g;
        }
    }
    let (lg, sign) = ln_gamma_signed(x);
    sign * (-lg).exp()
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Principal-branch-continuous log Γ(z) for complex z away from the poles.
pub fn ln_gamma_complex(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // Γ(z)Γ(1-z) = π / sin(πz)
        let reflected = ln_gamma_complex(Complex64::new(1.0, 0.0) - z);
        let s = (z * PI).sin();
        return Complex64::new(PI.ln(), 0.0) - s.ln() - reflected;
    }
    let z = z - 1.0;
    let mut acc = Complex64::new(LANCZOS_COEF[0], 0.0);
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    Complex64::new(0.5 * (2.0 * PI).ln(), 0.0) + (z + 0.5) * t.ln() - t + acc.ln()
}

pub fn gamma_complex(z: Complex64) -> Complex64 {
    ln_gamma_complex(z).exp()
}

/// True when `z` lies within `tol` of a non-positive integer.
pub fn is_complex_gamma_pole(z: Complex64, tol: f64) -> bool {
    z.re <= tol && z.im.abs() < tol && (z.re - z.re.round()).abs() < tol
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recip_gamma_vanishes_on_poles() {
        assert_eq!(recip_gamma(0.0), 0.0);
        assert_eq!(recip_gamma(-3.0), 0.0);
        assert!((recip_gamma(-0.5) - 1.0 / (-2.0 * PI.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn recip_gamma_large_argument_uses_log_route() {
        let x = 200.5;
        let direct = (-libm::lgamma(x)).exp();
        assert!((recip_gamma(x) - direct).abs() <= 1e-12 * direct);
    }

    #[test]
    fn complex_gamma_matches_real_axis() {
        for &x in &[0.3, 1.0, 2.5, 7.25, -0.7, -2.5] {
            let g = gamma_complex(Complex64::new(x, 0.0));
            let r = gamma(x);
            assert!((g.re - r).abs() < 1e-12 * r.abs(), "x={x}: {g} vs {r}");
            assert!(g.im.abs() < 1e-12 * r.abs());
        }
    }

    #[test]
    fn complex_gamma_reflection_identity() {
        // |Γ(1/2 + iy)|^2 = π / cosh(πy)
        for &y in &[0.1, 1.0, 3.0] {
            let g = gamma_complex(Complex64::new(0.5, y));
            let expected = PI / (PI * y).cosh();
            assert!((g.norm_sqr() - expected).abs() < 1e-13 * expected);
        }
    }

    #[test]
    fn complex_gamma_recurrence() {
        let z = Complex64::new(-1.3, 0.8);
        let lhs = gamma_complex(z + 1.0);
        let rhs = z * gamma_complex(z);
        assert!((lhs - rhs).norm() < 1e-12 * lhs.norm());
    }
}
