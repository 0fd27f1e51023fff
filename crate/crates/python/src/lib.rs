use mittag_kinetics::fracint::{rl_integral as rl_integral_core, FracIntConfig};
use mittag_kinetics::kinetics::{self, ThreeTermNumerator, ThreeTermTransform};
use mittag_kinetics::laplace::{lt_invert_numeric, InversionConfig, TransformDescriptor};
use mittag_kinetics::reaction_diffusion::{rd_solve_fd, rd_solve_spectral, RDProblem};
use mittag_kinetics::special_functions::{ml_eval as ml_eval_core, MLParams, SeriesConfig};
use mittag_kinetics::Error;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use std::cell::RefCell;

create_exception!(mittag_kinetics, MittagKineticsError, PyException);

/// The error kind leads the message, e.g. "PrecisionLoss: ...".
fn to_py(e: Error) -> PyErr {
    MittagKineticsError::new_err(format!("{}: {e}", e.kind()))
}

#[pyfunction]
#[pyo3(signature = (nu, mu, z, gamma = 1.0))]
fn ml_eval(nu: f64, mu: f64, z: f64, gamma: f64) -> PyResult<f64> {
    let params = MLParams::extended(nu, mu, gamma).map_err(to_py)?;
    ml_eval_core(&params, z, &SeriesConfig::default()).map_err(to_py)
}

/// Riemann–Liouville integral of order `nu` of a Python callable at `t`.
#[pyfunction]
#[pyo3(signature = (f, nu, t, steps = 512))]
fn rl_integral(f: &Bound<'_, PyAny>, nu: f64, t: f64, steps: usize) -> PyResult<f64> {
    let raised = RefCell::new(None::<PyErr>);
    let sample = |x: f64| match f.call1((x,)).and_then(|v| v.extract::<f64>()) {
        Ok(v) => v,
        Err(e) => {
            raised.borrow_mut().get_or_insert(e);
            f64::NAN
        }
    };
    let out = rl_integral_core(&sample, nu, t, &FracIntConfig::default().with_steps(steps));
    if let Some(e) = raised.into_inner() {
        return Err(e);
    }
    out.map_err(to_py)
}

/// Numerical inverse Laplace transform of a descriptor given as JSON,
/// e.g. `{"kind": "ml-basic", "n0": 1, "c": 1, "nu": 0.5}`.
#[pyfunction]
fn lt_invert(transform: &str, t: Vec<f64>) -> PyResult<Vec<f64>> {
    let d: TransformDescriptor = serde_json::from_str(transform)
        .map_err(|e| PyValueError::new_err(format!("bad transform: {e}")))?;
    let cfg = InversionConfig::default();
    t.iter()
        .map(|&t| lt_invert_numeric(&d, t, &cfg).map_err(to_py))
        .collect()
}

#[pyfunction]
#[pyo3(signature = (alpha, beta, a, b, t, numerator = "alpha-minus-one"))]
fn invert_three_term(
    alpha: f64,
    beta: f64,
    a: f64,
    b: f64,
    t: Vec<f64>,
    numerator: &str,
) -> PyResult<Vec<f64>> {
    let numerator = match numerator {
        "alpha-minus-one" => ThreeTermNumerator::AlphaMinusOne,
        "beta-minus-one" => ThreeTermNumerator::BetaMinusOne,
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown numerator `{other}`"
            )))
        }
    };
    let tt = ThreeTermTransform::new(alpha, beta, a, b, numerator).map_err(to_py)?;
    let cfg = SeriesConfig::default();
    t.iter()
        .map(|&t| {
            kinetics::invert_three_term(&tt, t, kinetics::DEFAULT_OUTER_TERMS, &cfg).map_err(to_py)
        })
        .collect()
}

#[pyclass(module = "mittag_kinetics")]
#[derive(Clone)]
struct KineticProblem {
    inner: kinetics::KineticProblem,
}

#[pymethods]
impl KineticProblem {
    #[staticmethod]
    fn basic(n0: f64, c: f64, nu: f64) -> Self {
        Self {
            inner: kinetics::KineticProblem::basic(n0, c, nu),
        }
    }

    #[staticmethod]
    fn power_source(n0: f64, c: f64, nu: f64, mu: f64) -> Self {
        Self {
            inner: kinetics::KineticProblem::power_source(n0, c, nu, mu),
        }
    }

    #[staticmethod]
    fn ml_gamma_source(n0: f64, c: f64, nu: f64, mu: f64, gamma: f64) -> Self {
        Self {
            inner: kinetics::KineticProblem::ml_gamma_source(n0, c, nu, mu, gamma),
        }
    }

    #[staticmethod]
    fn ml_source(n0: f64, c: f64, nu: f64, mu: f64) -> Self {
        Self {
            inner: kinetics::KineticProblem::ml_source(n0, c, nu, mu),
        }
    }

    #[staticmethod]
    fn two_rate(n0: f64, c: f64, d: f64, nu: f64, mu: f64) -> Self {
        Self {
            inner: kinetics::KineticProblem::two_rate(n0, c, d, nu, mu),
        }
    }

    /// Closed-form solution N(t) on the given times.
    fn solve(&self, t: Vec<f64>) -> PyResult<Vec<f64>> {
        let s = kinetics::solve(&self.inner).map_err(to_py)?;
        s.eval_grid(&t, &SeriesConfig::default()).map_err(to_py)
    }

    /// Numerical inversion of the solution's transform, for cross-checks.
    fn solve_numeric(&self, t: Vec<f64>) -> PyResult<Vec<f64>> {
        let d = self.inner.transform().map_err(to_py)?;
        let cfg = InversionConfig::default();
        t.iter()
            .map(|&t| lt_invert_numeric(&d, t, &cfg).map_err(to_py))
            .collect()
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.inner)
    }
}

/// Periodic linear reaction–diffusion solve; returns (x, field) with
/// field[i][j] = N(x_j, times[i]).
#[pyfunction]
#[pyo3(signature = (a, nu2, xi, length, n0, times, n1 = None, method = "spectral", dt = None))]
#[allow(clippy::too_many_arguments)]
fn rd_solve(
    a: f64,
    nu2: f64,
    xi: f64,
    length: f64,
    n0: Vec<f64>,
    times: Vec<f64>,
    n1: Option<Vec<f64>>,
    method: &str,
    dt: Option<f64>,
) -> PyResult<(Vec<f64>, Vec<Vec<f64>>)> {
    let p = RDProblem {
        a,
        nu2,
        xi,
        length,
        modes: n0.len(),
        n0,
        n1: n1.unwrap_or_default(),
        times,
    };
    let s = match method {
        "spectral" => rd_solve_spectral(&p),
        "fd" => rd_solve_fd(&p, dt.unwrap_or(0.5 * p.dx() / nu2.sqrt())),
        other => return Err(PyValueError::new_err(format!("unknown method `{other}`"))),
    }
    .map_err(to_py)?;
    Ok((s.x, s.field))
}

#[pymodule]
#[pyo3(name = "mittag_kinetics")]
fn init_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add(
        "MittagKineticsError",
        m.py().get_type::<MittagKineticsError>(),
    )?;
    m.add_class::<KineticProblem>()?;
    m.add_function(wrap_pyfunction!(ml_eval, m)?)?;
    m.add_function(wrap_pyfunction!(rl_integral, m)?)?;
    m.add_function(wrap_pyfunction!(lt_invert, m)?)?;
    m.add_function(wrap_pyfunction!(invert_three_term, m)?)?;
    m.add_function(wrap_pyfunction!(rd_solve, m)?)?;
    Ok(())
}
