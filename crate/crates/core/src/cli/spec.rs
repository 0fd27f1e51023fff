//! JSON problem specification read by the command-line front end.

use crate::error::{Error, Result};
use crate::kinetics::{ThreeTermNumerator, DEFAULT_OUTER_TERMS};
use crate::laplace::{InversionConfig, TransformDescriptor};
use crate::special_functions::SeriesConfig;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

pub const SPEC_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    EvalMl,
    EvalWright,
    SolveKinetic,
    InvertLt,
    InvertThreeTerm,
    RdSolve,
    Verify,
}

impl Task {
    pub fn name(self) -> &'static str {
        match self {
            Task::EvalMl => "eval-ml",
            Task::EvalWright => "eval-wright",
            Task::SolveKinetic => "solve-kinetic",
            Task::InvertLt => "invert-lt",
            Task::InvertThreeTerm => "invert-three-term",
            Task::RdSolve => "rd-solve",
            Task::Verify => "verify",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Either an inclusive linear range or explicit values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GridSpec {
    Range { start: f64, stop: f64, n: usize },
    Values { values: Vec<f64> },
}

impl GridSpec {
    /// `START:STOP:N`
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || Error::Spec(format!("grid must look like START:STOP:N, got `{s}`"));
        if parts.len() != 3 {
            return Err(bad());
        }
        Ok(GridSpec::Range {
            start: parts[0].trim().parse().map_err(|_| bad())?,
            stop: parts[1].trim().parse().map_err(|_| bad())?,
            n: parts[2].trim().parse().map_err(|_| bad())?,
        })
    }

    pub fn points(&self) -> Result<Vec<f64>> {
        let pts = match *self {
            GridSpec::Range { start, stop, n } => {
                if n == 0 {
                    return Err(Error::Spec("grid needs n >= 1".into()));
                }
                if !(start.is_finite() && stop.is_finite()) || (n > 1 && stop <= start) {
                    return Err(Error::Spec(format!(
                        "grid range {start}:{stop} is not increasing"
                    )));
                }
                if n == 1 {
                    vec![start]
                } else {
                    let step = (stop - start) / (n - 1) as f64;
                    (0..n)
                        .map(|i| {
                            if i == n - 1 {
                                stop
                            } else {
                                start + step * i as f64
                            }
                        })
                        .collect()
                }
            }
            GridSpec::Values { ref values } => values.clone(),
        };
        if pts.is_empty() {
            return Err(Error::Spec("grid is empty".into()));
        }
        if pts.iter().any(|v| !v.is_finite()) || pts.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Spec(
                "grid values must be finite and strictly increasing".into(),
            ));
        }
        Ok(pts)
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default)]
    pub format: Option<Format>,
    #[serde(default)]
    pub path: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub version: String,
    #[serde(default)]
    pub task: Option<Task>,
    pub parameters: serde_json::Value,
    #[serde(default)]
    pub grid: Option<GridSpec>,
    #[serde(default)]
    pub output: Option<OutputSpec>,
}

impl ProblemSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: ProblemSpec =
            serde_json::from_str(text).map_err(|e| Error::Spec(format!("malformed spec: {e}")))?;
        if spec.version != SPEC_VERSION {
            return Err(Error::Spec(format!(
                "unsupported spec version `{}`, expected \"1\"",
                spec.version
            )));
        }
        Ok(spec)
    }

    pub fn parameters<T: DeserializeOwned>(&self) -> Result<T> {
        serde_json::from_value(self.parameters.clone())
            .map_err(|e| Error::Spec(format!("invalid parameters: {e}")))
    }
}

/// One number or a list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany {
    One(f64),
    Many(Vec<f64>),
}

impl OneOrMany {
    pub fn to_vec(&self) -> Vec<f64> {
        match self {
            OneOrMany::One(v) => vec![*v],
            OneOrMany::Many(v) => v.clone(),
        }
    }
}

fn default_gamma() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvalMlParams {
    pub nu: f64,
    pub mu: f64,
    #[serde(default = "default_gamma")]
    pub gamma: f64,
    #[serde(default)]
    pub z: Option<OneOrMany>,
    #[serde(default)]
    pub series: Option<SeriesConfig>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvalWrightParams {
    pub upper: Vec<(f64, f64)>,
    pub lower: Vec<(f64, f64)>,
    #[serde(default)]
    pub z: Option<OneOrMany>,
    #[serde(default)]
    pub series: Option<SeriesConfig>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvertLtParams {
    pub transform: TransformDescriptor,
    #[serde(default)]
    pub inversion: Option<InversionConfig>,
}

fn default_outer_terms() -> usize {
    DEFAULT_OUTER_TERMS
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThreeTermParams {
    pub alpha: f64,
    pub beta: f64,
    pub a: f64,
    pub b: f64,
    pub numerator: ThreeTermNumerator,
    #[serde(default = "default_outer_terms")]
    pub outer_terms: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RdMethod {
    #[default]
    Spectral,
    Fd,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RdParams {
    pub a: f64,
    pub nu2: f64,
    pub xi: f64,
    pub length: f64,
    pub modes: usize,
    pub n0: Vec<f64>,
    #[serde(default)]
    pub n1: Vec<f64>,
    #[serde(default)]
    pub times: Option<Vec<f64>>,
    #[serde(default)]
    pub method: RdMethod,
    /// time step of the finite-difference solver; defaults to dx/(2ν)
    #[serde(default)]
    pub dt: Option<f64>,
}
