//! Linear damped reaction-diffusion (telegraph-type) equation on a periodic
//! interval,
//!
//! ```text
//! ∂²N/∂t² + a ∂N/∂t = ν² ∂²N/∂x² + ξ² N,
//! ```
//!
//! solved per Fourier mode through the three-term transform
//! ((p + a) N̂₀ + N̂₁) / (p² + a p + b_k), b_k = ν²k² - ξ², and by a
//! central-difference reference scheme.

use crate::error::{Error, Result};
use crate::kinetics::{
    invert_three_term, ThreeTermNumerator, ThreeTermTransform, DEFAULT_OUTER_TERMS,
};
use crate::special_functions::SeriesConfig;
use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RDProblem {
    /// damping
    pub a: f64,
    /// squared wave speed ν²
    pub nu2: f64,
    /// coefficient of the linear reaction term ξ²N
    pub xi: f64,
    /// period L
    pub length: f64,
    /// grid points / retained modes M, a power of two
    pub modes: usize,
    /// N(x, 0) at x_j = jL/M
    pub n0: Vec<f64>,
    /// ∂N/∂t(x, 0); empty means zero
    #[serde(default)]
    pub n1: Vec<f64>,
    /// output times, non-negative and strictly increasing
    pub times: Vec<f64>,
}

impl RDProblem {
    /// A problem with initial data sampled from the given functions.
    #[allow(clippy::too_many_arguments)]
    pub fn from_functions(
        a: f64,
        nu2: f64,
        xi: f64,
        length: f64,
        modes: usize,
        n0: impl Fn(f64) -> f64,
        n1: impl Fn(f64) -> f64,
        times: Vec<f64>,
    ) -> Self {
        let x: Vec<f64> = (0..modes)
            .map(|j| j as f64 * length / modes as f64)
            .collect();
        Self {
            a,
            nu2,
            xi,
            length,
            modes,
            n0: x.iter().map(|&x| n0(x)).collect(),
            n1: x.iter().map(|&x| n1(x)).collect(),
            times,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.a.is_finite() || !self.xi.is_finite() {
            return Err(Error::domain("a and xi must be finite"));
        }
        if !(self.nu2 > 0.0 && self.nu2.is_finite()) {
            return Err(Error::domain(format!(
                "nu2 must be positive, got {}",
                self.nu2
            )));
        }
        if !(self.length > 0.0 && self.length.is_finite()) {
            return Err(Error::domain(format!(
                "domain length must be positive, got {}",
                self.length
            )));
        }
        if self.modes < 2 || !self.modes.is_power_of_two() {
            return Err(Error::domain(format!(
                "modes must be a power of two >= 2, got {}",
                self.modes
            )));
        }
        if self.n0.len() != self.modes || !(self.n1.is_empty() || self.n1.len() == self.modes) {
            return Err(Error::domain(format!(
                "initial arrays must have {} samples (got {} and {})",
                self.modes,
                self.n0.len(),
                self.n1.len()
            )));
        }
        if self.n0.iter().chain(&self.n1).any(|v| !v.is_finite()) {
            return Err(Error::domain("initial data must be finite"));
        }
        if self.times.is_empty() {
            return Err(Error::domain("at least one output time is required"));
        }
        if self.times.iter().any(|&t| !(t >= 0.0 && t.is_finite()))
            || self.times.windows(2).any(|w| w[1] <= w[0])
        {
            return Err(Error::domain(
                "times must be non-negative and strictly increasing",
            ));
        }
        Ok(())
    }

    pub fn dx(&self) -> f64 {
        self.length / self.modes as f64
    }

    pub fn x_grid(&self) -> Vec<f64> {
        (0..self.modes).map(|j| j as f64 * self.dx()).collect()
    }

    fn initial_velocity(&self) -> Vec<f64> {
        if self.n1.is_empty() {
            vec![0.0; self.modes]
        } else {
            self.n1.clone()
        }
    }

    /// Angular wavenumber of FFT bin j.
    pub fn wavenumber(&self, j: usize) -> f64 {
        let m = self.modes as isize;
        let signed = if (j as isize) <= m / 2 {
            j as isize
        } else {
            j as isize - m
        };
        2.0 * PI * signed as f64 / self.length
    }
}

/// Three-term data of one Fourier mode: (α, β) = (2, 1), damping a, b_k.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeInfo {
    pub k: f64,
    pub alpha: f64,
    pub beta: f64,
    pub a: f64,
    pub b: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RDSolution {
    pub x: Vec<f64>,
    pub times: Vec<f64>,
    /// field[i][j] = N(x_j, times[i])
    pub field: Vec<Vec<f64>>,
    /// per FFT bin; empty for the finite-difference solver
    pub modes: Vec<ModeInfo>,
    /// Largest imaginary part left by the inverse FFT, relative to the field.
    pub imag_residue: f64,
    /// Growing modes (b_k < 0) and similar non-fatal conditions.
    pub warnings: Vec<String>,
}

/// Largest substep per mode: keeps b h² and |a| h small enough that the
/// outer and inner series converge without cancellation.
fn substep_limit(a: f64, b: f64) -> f64 {
    let mut h = f64::INFINITY;
    if b != 0.0 {
        h = h.min(2.0 / b.abs().sqrt());
    }
    if a != 0.0 {
        h = h.min(2.0 / a.abs());
    }
    h.min(1.0)
}

/// 2×2 propagator of y'' + a y' + b y = 0 acting on (y, y').
#[derive(Clone, Copy)]
struct Propagator([[f64; 2]; 2]);

impl Propagator {
    fn identity() -> Self {
        Propagator([[1.0, 0.0], [0.0, 1.0]])
    }

    /// Built from f₃ = L⁻¹[p/(p²+ap+b)] and f₄ = L⁻¹[1/(p²+ap+b)]:
    /// y(h) = (f₃ + a f₄) y₀ + f₄ y₁, y'(h) = -b f₄ y₀ + f₃ y₁.
    fn over(a: f64, b: f64, h: f64, cfg: &SeriesConfig) -> Result<Self> {
        let f3 = ThreeTermTransform::new(2.0, 1.0, a, b, ThreeTermNumerator::AlphaMinusOne)?;
        let f4 = ThreeTermTransform::new(2.0, 1.0, a, b, ThreeTermNumerator::BetaMinusOne)?;
        let f3 = invert_three_term(&f3, h, DEFAULT_OUTER_TERMS, cfg)?;
        let f4 = invert_three_term(&f4, h, DEFAULT_OUTER_TERMS, cfg)?;
        Ok(Propagator([[f3 + a * f4, f4], [-b * f4, f3]]))
    }

    fn then(&self, next: &Propagator) -> Propagator {
        let (p, q) = (&next.0, &self.0);
        let mut out = [[0.0; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = p[i][0] * q[0][j] + p[i][1] * q[1][j];
            }
        }
        Propagator(out)
    }

    fn apply(&self, y: Complex64, dy: Complex64) -> (Complex64, Complex64) {
        let m = &self.0;
        (m[0][0] * y + m[0][1] * dy, m[1][0] * y + m[1][1] * dy)
    }
}

/// Propagator across dt for one mode, composed from equal substeps.
fn mode_propagator(a: f64, b: f64, dt: f64, cfg: &SeriesConfig) -> Result<Propagator> {
    if dt == 0.0 {
        return Ok(Propagator::identity());
    }
    let steps = (dt / substep_limit(a, b)).ceil().max(1.0) as usize;
    let step = Propagator::over(a, b, dt / steps as f64, cfg)?;
    let mut total = step;
    for _ in 1..steps {
        total = total.then(&step);
    }
    Ok(total)
}

/// Laplace–Fourier solution: each mode is advanced with the inverse of its
/// three-term transform; long intervals are split into substeps and the
/// resulting propagators composed.
pub fn rd_solve_spectral(problem: &RDProblem) -> Result<RDSolution> {
    problem.validate()?;
    let m = problem.modes;
    let cfg = SeriesConfig::default();
    let mut planner = FftPlanner::<f64>::new();
    let forward = planner.plan_fft_forward(m);
    let inverse = planner.plan_fft_inverse(m);

    let to_complex = |v: &[f64]| {
        v.iter()
            .map(|&x| Complex64::new(x, 0.0))
            .collect::<Vec<_>>()
    };
    let mut y = to_complex(&problem.n0);
    let mut dy = to_complex(&problem.initial_velocity());
    forward.process(&mut y);
    forward.process(&mut dy);

    let xi2 = problem.xi * problem.xi;
    let modes: Vec<ModeInfo> = (0..m)
        .map(|j| {
            let k = problem.wavenumber(j);
            ModeInfo {
                k,
                alpha: 2.0,
                beta: 1.0,
                a: problem.a,
                b: problem.nu2 * k * k - xi2,
            }
        })
        .collect();
    let mut warnings = Vec::new();
    for (j, mode) in modes.iter().enumerate() {
        if mode.b < 0.0 && (y[j].norm() > 0.0 || dy[j].norm() > 0.0) {
            warnings.push(format!(
                "InstabilityWarning: mode k = {} has b = {} < 0 (xi^2 > nu^2 k^2); it grows",
                mode.k, mode.b
            ));
        }
    }

    let mut field = Vec::with_capacity(problem.times.len());
    let mut imag_residue = 0.0f64;
    let mut now = 0.0;
    for &t in &problem.times {
        let dt = t - now;
        for (j, mode) in modes.iter().enumerate() {
            if y[j].norm() == 0.0 && dy[j].norm() == 0.0 {
                continue;
            }
            // ±k share b_k, so the conjugate symmetry of the spectrum is kept
            let prop = mode_propagator(mode.a, mode.b, dt, &cfg)?;
            (y[j], dy[j]) = prop.apply(y[j], dy[j]);
        }
        now = t;
        let mut back = y.clone();
        inverse.process(&mut back);
        let scale = 1.0 / m as f64;
        let norm = back.iter().fold(0.0f64, |acc, z| acc.max(z.re.abs())) * scale;
        let imag = back.iter().fold(0.0f64, |acc, z| acc.max(z.im.abs())) * scale;
        if norm > 0.0 {
            imag_residue = imag_residue.max(imag / norm);
        }
        field.push(back.iter().map(|z| z.re * scale).collect());
    }
    Ok(RDSolution {
        x: problem.x_grid(),
        times: problem.times.clone(),
        field,
        modes,
        imag_residue,
        warnings,
    })
}

/// Reference solution by second-order central differences in x and t:
///
/// ```text
/// (Nⁿ⁺¹ - 2Nⁿ + Nⁿ⁻¹)/dt² + a (Nⁿ⁺¹ - Nⁿ⁻¹)/(2dt) = ν² D₂Nⁿ + ξ²Nⁿ
/// ```
///
/// The step is shrunk slightly so the last output time is hit exactly;
/// intermediate times are read off by quadratic interpolation between
/// levels, which keeps second order.
pub fn rd_solve_fd(problem: &RDProblem, dt: f64) -> Result<RDSolution> {
    problem.validate()?;
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::domain(format!(
            "time step must be positive, got {dt}"
        )));
    }
    let dx = problem.dx();
    let nu = problem.nu2.sqrt();
    if dt > dx / nu {
        return Err(Error::Stability(format!(
            "time step {dt} exceeds the CFL limit dx/nu = {}",
            dx / nu
        )));
    }
    let t_end = *problem.times.last().unwrap();
    let steps = (t_end / dt).ceil().max(2.0) as usize;
    let dt = t_end / steps as f64;
    let m = problem.modes;
    let (a, xi2) = (problem.a, problem.xi * problem.xi);
    let lap_coef = problem.nu2 / (dx * dx);
    let rhs = |n: &[f64], j: usize| {
        let (l, r) = (n[(j + m - 1) % m], n[(j + 1) % m]);
        lap_coef * (l - 2.0 * n[j] + r) + xi2 * n[j]
    };

    let n1 = problem.initial_velocity();
    let mut levels: Vec<Vec<f64>> = Vec::with_capacity(steps + 1);
    levels.push(problem.n0.clone());
    let start: Vec<f64> = (0..m)
        .map(|j| {
            let n0 = &problem.n0;
            n0[j] + dt * n1[j] + 0.5 * dt * dt * (rhs(n0, j) - a * n1[j])
        })
        .collect();
    levels.push(start);
    let (c_plus, c_minus) = (
        1.0 / (dt * dt) + a / (2.0 * dt),
        1.0 / (dt * dt) - a / (2.0 * dt),
    );
    for n in 1..steps {
        let (prev, cur) = (&levels[n - 1], &levels[n]);
        let next: Vec<f64> = (0..m)
            .map(|j| (rhs(cur, j) + 2.0 * cur[j] / (dt * dt) - c_minus * prev[j]) / c_plus)
            .collect();
        if next.iter().any(|v| !v.is_finite()) {
            return Err(Error::Stability(format!(
                "finite-difference field blew up at step {}",
                n + 1
            )));
        }
        levels.push(next);
    }

    let field = problem
        .times
        .iter()
        .map(|&t| {
            let s = t / dt;
            // centre a three-level stencil on the nearest level
            let i = (s.round() as usize).clamp(1, steps - 1);
            let r = s - i as f64;
            let (w0, w1, w2) = (0.5 * r * (r - 1.0), 1.0 - r * r, 0.5 * r * (r + 1.0));
            (0..m)
                .map(|j| w0 * levels[i - 1][j] + w1 * levels[i][j] + w2 * levels[i + 1][j])
                .collect()
        })
        .collect();
    Ok(RDSolution {
        x: problem.x_grid(),
        times: problem.times.clone(),
        field,
        modes: Vec::new(),
        imag_residue: 0.0,
        warnings: Vec::new(),
    })
}
