//! `mittag-kinetics <task> --spec FILE`: evaluate, solve and verify from a
//! JSON problem spec.
//!
//! The spec is parsed and validated completely before any computation;
//! results are collected in memory and written once. Exit codes: 0 ok, 2 spec
//! error, 3 numerical failure. Failures print a JSON error object on stderr.

mod output;
mod spec;

pub use output::Table;
pub use spec::{
    EvalMlParams, EvalWrightParams, Format, GridSpec, InvertLtParams, OneOrMany, OutputSpec,
    ProblemSpec, RdMethod, RdParams, Task, ThreeTermParams, SPEC_VERSION,
};

use crate::error::{Error, Result};
use crate::fracint::{residual_check, FracIntConfig};
use crate::kinetics::{invert_three_term, solve, KineticProblem, ThreeTermTransform};
use crate::laplace::{lt_invert_grid, lt_invert_numeric, InversionConfig};
use crate::reaction_diffusion::{rd_solve_fd, rd_solve_spectral, RDProblem};
use crate::special_functions::{ml_eval, wright_eval, MLParams, SeriesConfig, WrightParams};
use clap::Parser;
use serde_json::json;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_SPEC: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

/// Default pass threshold of `verify` for |closed form - numeric inverse|.
pub const VERIFY_TOL: f64 = 1e-5;
/// Pass threshold of `verify` for the integral-equation residual.
pub const VERIFY_RESIDUAL_TOL: f64 = 1e-4;

#[derive(Debug, Clone, Parser)]
#[command(
    name = "mittag-kinetics",
    version,
    about = "Fractional kinetics and reaction-diffusion solvers"
)]
pub struct Args {
    pub task: Task,
    /// JSON problem spec
    #[arg(long)]
    pub spec: PathBuf,
    /// output file (default: the spec's output.path, else stdout)
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// accuracy target: series tolerance for eval tasks, inversion target for
    /// invert-lt, pass threshold for verify
    #[arg(long)]
    pub tol: Option<f64>,
    /// START:STOP:N, overrides the spec grid
    #[arg(long)]
    pub grid: Option<String>,
}

/// A fully validated job, ready to run.
#[derive(Debug, Clone)]
enum Job {
    EvalMl {
        params: MLParams,
        z: Vec<f64>,
        series: SeriesConfig,
    },
    EvalWright {
        params: WrightParams,
        z: Vec<f64>,
        series: SeriesConfig,
    },
    SolveKinetic {
        problem: KineticProblem,
        t: Vec<f64>,
    },
    InvertLt {
        params: InvertLtParams,
        cfg: InversionConfig,
    },
    InvertThreeTerm {
        tt: ThreeTermTransform,
        outer_terms: usize,
        t: Vec<f64>,
    },
    RdSolve {
        problem: RDProblem,
        method: RdMethod,
        dt: Option<f64>,
    },
    Verify {
        problem: KineticProblem,
        t: Vec<f64>,
        tol: f64,
    },
}

/// Where and how to write.
#[derive(Debug, Clone)]
pub struct Destination {
    pub format: Format,
    pub path: Option<PathBuf>,
}

fn spec_err(e: Error) -> Error {
    match e {
        Error::Spec(_) => e,
        other => Error::Spec(other.to_string()),
    }
}

fn positive_grid(t: &[f64], what: &str) -> Result<()> {
    if t.iter().any(|&v| v <= 0.0) {
        return Err(Error::Spec(format!("{what} grid values must be positive")));
    }
    Ok(())
}

fn series_with_tol(base: Option<SeriesConfig>, tol: Option<f64>) -> Result<SeriesConfig> {
    let mut cfg = base.unwrap_or_default();
    if let Some(t) = tol {
        cfg.rel_tol = t;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn plan(args: &Args, spec: &ProblemSpec) -> Result<(Job, Destination)> {
    if let Some(task) = spec.task {
        if task != args.task {
            return Err(Error::Spec(format!(
                "spec is for task `{}` but `{}` was requested",
                task.name(),
                args.task.name()
            )));
        }
    }
    if let Some(tol) = args.tol {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::Spec(format!("--tol must be positive, got {tol}")));
        }
    }
    let grid = match &args.grid {
        Some(g) => Some(GridSpec::parse(g)?.points()?),
        None => spec.grid.as_ref().map(|g| g.points()).transpose()?,
    };
    let need_grid = |what: &str| {
        grid.clone()
            .ok_or_else(|| Error::Spec(format!("{what} needs a grid")))
    };

    let job = match args.task {
        Task::EvalMl => {
            let p: EvalMlParams = spec.parameters()?;
            let params = MLParams::extended(p.nu, p.mu, p.gamma)?;
            let z = grid
                .clone()
                .or(p.z.map(|z| z.to_vec()))
                .ok_or_else(|| Error::Spec("eval-ml needs z or a grid".into()))?;
            Job::EvalMl {
                params,
                z,
                series: series_with_tol(p.series, args.tol)?,
            }
        }
        Task::EvalWright => {
            let p: EvalWrightParams = spec.parameters()?;
            let params = WrightParams::new(p.upper, p.lower)?;
            let z = grid
                .clone()
                .or(p.z.map(|z| z.to_vec()))
                .ok_or_else(|| Error::Spec("eval-wright needs z or a grid".into()))?;
            Job::EvalWright {
                params,
                z,
                series: series_with_tol(p.series, args.tol)?,
            }
        }
        Task::SolveKinetic => {
            let problem: KineticProblem = spec.parameters()?;
            problem.validate()?;
            let t = need_grid("solve-kinetic")?;
            positive_grid(&t, "time")?;
            Job::SolveKinetic { problem, t }
        }
        Task::InvertLt => {
            let params: InvertLtParams = spec.parameters()?;
            params.transform.validate()?;
            let mut cfg = params.inversion.clone().unwrap_or_default();
            if let Some(t) = args.tol {
                cfg.target = t;
            }
            match grid.clone() {
                Some(g) => cfg.grid = g,
                None if !cfg.grid.is_empty() => {}
                None => return Err(Error::Spec("invert-lt needs a grid".into())),
            }
            cfg.validate()?;
            Job::InvertLt { params, cfg }
        }
        Task::InvertThreeTerm => {
            let p: ThreeTermParams = spec.parameters()?;
            let tt = ThreeTermTransform::new(p.alpha, p.beta, p.a, p.b, p.numerator)?;
            if p.outer_terms == 0 {
                return Err(Error::Spec("outer_terms must be positive".into()));
            }
            let t = need_grid("invert-three-term")?;
            positive_grid(&t, "time")?;
            Job::InvertThreeTerm {
                tt,
                outer_terms: p.outer_terms,
                t,
            }
        }
        Task::RdSolve => {
            let p: RdParams = spec.parameters()?;
            let times = grid
                .clone()
                .or(p.times)
                .ok_or_else(|| Error::Spec("rd-solve needs times or a grid".into()))?;
            let problem = RDProblem {
                a: p.a,
                nu2: p.nu2,
                xi: p.xi,
                length: p.length,
                modes: p.modes,
                n0: p.n0,
                n1: p.n1,
                times,
            };
            problem.validate()?;
            if let Some(dt) = p.dt {
                if !(dt > 0.0) {
                    return Err(Error::Spec(format!("dt must be positive, got {dt}")));
                }
                if p.method == RdMethod::Fd && dt > problem.dx() / problem.nu2.sqrt() {
                    return Err(Error::Spec(format!(
                        "dt = {dt} violates the CFL limit dx/nu"
                    )));
                }
            }
            Job::RdSolve {
                problem,
                method: p.method,
                dt: p.dt,
            }
        }
        Task::Verify => {
            let problem: KineticProblem = spec.parameters()?;
            problem.validate()?;
            let t = need_grid("verify")?;
            positive_grid(&t, "time")?;
            Job::Verify {
                problem,
                t,
                tol: args.tol.unwrap_or(VERIFY_TOL),
            }
        }
    };
    let out = spec.output.clone().unwrap_or_default();
    let dest = Destination {
        format: args.format.or(out.format).unwrap_or_default(),
        path: args.out.clone().or(out.path.map(PathBuf::from)),
    };
    Ok((job, dest))
}

/// Outcome of a job: the table and, for `verify`, whether the checks passed.
struct Outcome {
    table: Table,
    failure: Option<String>,
}

fn execute(job: &Job) -> Result<Outcome> {
    let ok = |table: Table| {
        Ok(Outcome {
            table,
            failure: None,
        })
    };
    match job {
        Job::EvalMl { params, z, series } => {
            let mut table = Table::new("eval-ml", &["z", "E"]);
            for &x in z {
                table.push(vec![x, ml_eval(params, x, series)?]);
            }
            ok(table)
        }
        Job::EvalWright { params, z, series } => {
            let mut table = Table::new("eval-wright", &["z", "psi"]);
            for &x in z {
                table.push(vec![x, wright_eval(params, x, series)?]);
            }
            ok(table)
        }
        Job::SolveKinetic { problem, t } => {
            let series = SeriesConfig::default();
            let solution = solve(problem)?;
            let mut table = Table::new("solve-kinetic", &["t", "N"]);
            for &x in t {
                table.push(vec![x, solution.eval(x, &series)?]);
            }
            if let Some(note) = &solution.note {
                table.meta.insert("note".into(), json!(note));
            }
            ok(table)
        }
        Job::InvertLt { params, cfg } => {
            let mut table = Table::new("invert-lt", &["t", "f"]);
            for (t, v) in lt_invert_grid(&params.transform, cfg)? {
                table.push(vec![t, v]);
            }
            ok(table)
        }
        Job::InvertThreeTerm { tt, outer_terms, t } => {
            let series = SeriesConfig::default();
            let mut table = Table::new("invert-three-term", &["t", "f"]);
            for &x in t {
                table.push(vec![x, invert_three_term(tt, x, *outer_terms, &series)?]);
            }
            ok(table)
        }
        Job::RdSolve {
            problem,
            method,
            dt,
        } => {
            let solution = match method {
                RdMethod::Spectral => rd_solve_spectral(problem)?,
                RdMethod::Fd => rd_solve_fd(
                    problem,
                    dt.unwrap_or(0.5 * problem.dx() / problem.nu2.sqrt()),
                )?,
            };
            let mut table = Table::new("rd-solve", &["x", "t", "N"]);
            for (row, &t) in solution.field.iter().zip(&solution.times) {
                for (&x, &n) in solution.x.iter().zip(row) {
                    table.push(vec![x, t, n]);
                }
            }
            if !solution.warnings.is_empty() {
                table
                    .meta
                    .insert("warnings".into(), json!(solution.warnings));
            }
            if *method == RdMethod::Spectral {
                table
                    .meta
                    .insert("imag_residue".into(), json!(solution.imag_residue));
            }
            ok(table)
        }
        Job::Verify { problem, t, tol } => verify(problem, t, *tol),
    }
}

fn verify(problem: &KineticProblem, t: &[f64], tol: f64) -> Result<Outcome> {
    let series = SeriesConfig::default();
    let solution = solve(problem)?;
    let transform = problem.transform()?;
    let inversion = InversionConfig::default();
    let f = |x: f64| solution.eval(x, &series).unwrap_or(f64::NAN);
    let residuals = residual_check(problem, &f, t, &FracIntConfig::default())?;
    let mut table = Table::new(
        "verify",
        &["t", "closed_form", "numeric", "abs_err", "residual"],
    );
    let (mut max_err, mut max_res) = (0.0f64, 0.0f64);
    for (&x, &res) in t.iter().zip(&residuals) {
        let closed = solution.eval(x, &series)?;
        let numeric = lt_invert_numeric(&transform, x, &inversion)?;
        let err = (closed - numeric).abs();
        max_err = max_err.max(err);
        max_res = max_res.max(res.abs());
        table.push(vec![x, closed, numeric, err, res]);
    }
    let passed = max_err < tol && max_res < VERIFY_RESIDUAL_TOL;
    table.meta.insert(
        "summary".into(),
        json!({
            "max_abs_err": max_err,
            "max_residual": max_res,
            "tol": tol,
            "residual_tol": VERIFY_RESIDUAL_TOL,
            "passed": passed,
        }),
    );
    let failure = (!passed).then(|| {
        format!("verification failed: max abs err {max_err:e} (tol {tol:e}), max residual {max_res:e} (tol {VERIFY_RESIDUAL_TOL:e})")
    });
    Ok(Outcome { table, failure })
}

fn error_object(kind: &str, message: &str) -> String {
    json!({ "error": { "kind": kind, "message": message } }).to_string()
}

fn report(e: &Error) -> String {
    let message = match e {
        Error::Spec(m) => m.clone(),
        other => other.to_string(),
    };
    error_object(e.kind(), &message)
}

/// Run one CLI invocation and return the process exit code.
pub fn run(args: &Args) -> i32 {
    let text = match std::fs::read_to_string(&args.spec) {
        Ok(t) => t,
        Err(e) => {
            eprintln!(
                "{}",
                error_object(
                    "SpecError",
                    &format!("cannot read {}: {e}", args.spec.display())
                )
            );
            return EXIT_SPEC;
        }
    };
    let planned = ProblemSpec::from_json(&text)
        .and_then(|spec| plan(args, &spec))
        .map_err(spec_err);
    let (job, dest) = match planned {
        Ok(p) => p,
        Err(e) => {
            eprintln!("{}", report(&e));
            return EXIT_SPEC;
        }
    };
    let outcome = match execute(&job) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("{}", report(&e));
            return EXIT_NUMERIC;
        }
    };
    if let Some(summary) = outcome.table.meta.get("summary") {
        eprintln!("{summary}");
    }
    if let Err(e) = outcome.table.write(dest.format, dest.path.as_deref()) {
        eprintln!("{}", error_object("IoError", &e.to_string()));
        return EXIT_SPEC;
    }
    match outcome.failure {
        Some(msg) => {
            eprintln!("{}", error_object("VerificationFailure", &msg));
            EXIT_NUMERIC
        }
        None => EXIT_OK,
    }
}
