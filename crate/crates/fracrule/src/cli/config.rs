//! Experiment configuration: the single value every subcommand builds,
//! whether from flags or from a JSON config file (flags override the file).

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::core::{Grid, WeierstrassParams};
use crate::operators::OperatorKind;
use crate::rules::VerdictConfig;

use super::CliError;

/// Which experiment to run. Mirrors the CLI subcommands one-to-one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    Derive,
    Weierstrass,
    Holder,
    Hadamard,
    VerifyLeibniz,
    VerifyChain,
    VerifyRemainder,
    VerifyScale,
    VerifyModifiedChain,
    Converge,
}

impl ExperimentKind {
    pub fn name(&self) -> &'static str {
        match self {
            ExperimentKind::Derive => "derive",
            ExperimentKind::Weierstrass => "weierstrass",
            ExperimentKind::Holder => "holder",
            ExperimentKind::Hadamard => "hadamard",
            ExperimentKind::VerifyLeibniz => "verify-leibniz",
            ExperimentKind::VerifyChain => "verify-chain",
            ExperimentKind::VerifyRemainder => "verify-remainder",
            ExperimentKind::VerifyScale => "verify-scale",
            ExperimentKind::VerifyModifiedChain => "verify-modified-chain",
            ExperimentKind::Converge => "converge",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorConfig {
    /// "rl", "jumarie", or "local".
    pub kind: String,
    pub alpha: f64,
    /// Lower terminal; experiments default it to the grid origin.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridConfig {
    pub a: f64,
    pub h: f64,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct OutputConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub json: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub csv: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub svg: Option<PathBuf>,
}

/// One experiment, fully described. Parses from JSON and round-trips
/// losslessly (`parse → serialize → parse` is the identity).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub operator: Option<OperatorConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridConfig>,
    /// Function constructors, e.g. "power:2", "weierstrass:0.5:2:40",
    /// "sin", "cos", "exp", "identity", "constant:3".
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rule: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_values: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub num_scales: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quad_points: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub thresholds: Option<VerdictConfig>,
    #[serde(default)]
    pub output: OutputConfig,
}

impl ExperimentConfig {
    pub fn new(experiment: ExperimentKind) -> Self {
        Self {
            experiment,
            operator: None,
            grid: None,
            f: None,
            g: None,
            w: None,
            rule: None,
            lambda: None,
            x0: None,
            t0: None,
            h_values: None,
            num_scales: None,
            quad_points: None,
            thresholds: None,
            output: OutputConfig::default(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text)
            .map_err(|e| CliError::Validation(format!("malformed config: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }
}

/// A named pointwise function constructor.
#[derive(Debug, Clone, PartialEq)]
pub enum FunctionSpec {
    Power { p: f64 },
    Weierstrass(WeierstrassParams),
    Sin,
    Cos,
    Exp,
    Identity,
    Constant { c: f64 },
}

impl FunctionSpec {
    /// Parse "power:P", "weierstrass:ALPHA:B:N", "constant:C", "sin",
    /// "cos", "exp", "identity"/"id".
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut parts = text.split(':');
        let head = parts.next().unwrap_or("");
        let rest: Vec<&str> = parts.collect();
        let bad = |msg: String| Err(CliError::Validation(msg));
        let one_number = |name: &str, rest: &[&str]| -> Result<f64, CliError> {
            if rest.len() != 1 {
                return Err(CliError::Validation(format!(
                    "{name} takes exactly one parameter, e.g. {name}:2"
                )));
            }
            rest[0]
                .parse::<f64>()
                .map_err(|_| CliError::Validation(format!("cannot parse {name} parameter {:?}", rest[0])))
        };
        match head {
            "power" => {
                let p = one_number("power", &rest)?;
                if !p.is_finite() {
                    return bad(format!("power exponent must be finite, got {p}"));
                }
                Ok(FunctionSpec::Power { p })
            }
            "constant" | "const" => Ok(FunctionSpec::Constant {
                c: one_number("constant", &rest)?,
            }),
            "weierstrass" => {
                if rest.len() != 3 {
                    return bad("weierstrass takes alpha:b:n_terms, e.g. weierstrass:0.5:2:40".into());
                }
                let alpha: f64 = rest[0]
                    .parse()
                    .map_err(|_| CliError::Validation(format!("bad weierstrass alpha {:?}", rest[0])))?;
                let b: f64 = rest[1]
                    .parse()
                    .map_err(|_| CliError::Validation(format!("bad weierstrass base {:?}", rest[1])))?;
                let n: usize = rest[2]
                    .parse()
                    .map_err(|_| CliError::Validation(format!("bad weierstrass term count {:?}", rest[2])))?;
                let params = WeierstrassParams::new(alpha, b, n)
                    .map_err(|e| CliError::Validation(e.to_string()))?;
                Ok(FunctionSpec::Weierstrass(params))
            }
            "sin" if rest.is_empty() => Ok(FunctionSpec::Sin),
            "cos" if rest.is_empty() => Ok(FunctionSpec::Cos),
            "exp" if rest.is_empty() => Ok(FunctionSpec::Exp),
            "identity" | "id" if rest.is_empty() => Ok(FunctionSpec::Identity),
            other => bad(format!(
                "unknown function constructor {other:?} (expected power:P, weierstrass:A:B:N, sin, cos, exp, identity, constant:C)"
            )),
        }
    }

    /// Evaluate the function at x.
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            FunctionSpec::Power { p } => x.powf(*p),
            FunctionSpec::Weierstrass(params) => crate::analysis::weierstrass(params, x),
            FunctionSpec::Sin => x.sin(),
            FunctionSpec::Cos => x.cos(),
            FunctionSpec::Exp => x.exp(),
            FunctionSpec::Identity => x,
            FunctionSpec::Constant { c } => *c,
        }
    }

    /// First derivative, for constructors that have one everywhere on the
    /// positive axis. Weierstrass is nowhere differentiable: None.
    pub fn derivative(&self) -> Option<Box<dyn Fn(f64) -> f64 + Send + Sync>> {
        match self {
            FunctionSpec::Power { p } => {
                let p = *p;
                Some(Box::new(move |x| p * x.powf(p - 1.0)))
            }
            FunctionSpec::Weierstrass(_) => None,
            FunctionSpec::Sin => Some(Box::new(f64::cos)),
            FunctionSpec::Cos => Some(Box::new(|x| -x.sin())),
            FunctionSpec::Exp => Some(Box::new(f64::exp)),
            FunctionSpec::Identity => Some(Box::new(|_| 1.0)),
            FunctionSpec::Constant { .. } => Some(Box::new(|_| 0.0)),
        }
    }

    /// Second derivative, same caveats as [`FunctionSpec::derivative`].
    pub fn second_derivative(&self) -> Option<Box<dyn Fn(f64) -> f64 + Send + Sync>> {
        match self {
            FunctionSpec::Power { p } => {
                let p = *p;
                Some(Box::new(move |x| p * (p - 1.0) * x.powf(p - 2.0)))
            }
            FunctionSpec::Weierstrass(_) => None,
            FunctionSpec::Sin => Some(Box::new(|x| -x.sin())),
            FunctionSpec::Cos => Some(Box::new(|x| -x.cos())),
            FunctionSpec::Exp => Some(Box::new(f64::exp)),
            FunctionSpec::Identity | FunctionSpec::Constant { .. } => Some(Box::new(|_| 0.0)),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            FunctionSpec::Power { p } => format!("power:{p}"),
            FunctionSpec::Weierstrass(w) => {
                format!("weierstrass:{}:{}:{}", w.alpha(), w.b(), w.n_terms())
            }
            FunctionSpec::Sin => "sin".into(),
            FunctionSpec::Cos => "cos".into(),
            FunctionSpec::Exp => "exp".into(),
            FunctionSpec::Identity => "identity".into(),
            FunctionSpec::Constant { c } => format!("constant:{c}"),
        }
    }
}

/// Parse the `a:h:n` grid flag.
pub fn parse_grid_flag(text: &str) -> Result<GridConfig, CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::Validation(format!(
            "grid must be a:h:n (three colon-separated fields), got {text:?}"
        )));
    }
    let a: f64 = parts[0]
        .parse()
        .map_err(|_| CliError::Validation(format!("bad grid origin {:?}", parts[0])))?;
    let h: f64 = parts[1]
        .parse()
        .map_err(|_| CliError::Validation(format!("bad grid step {:?}", parts[1])))?;
    let n: usize = parts[2]
        .parse()
        .map_err(|_| CliError::Validation(format!("bad grid count {:?}", parts[2])))?;
    Ok(GridConfig { a, h, n })
}

/// Parse a comma-separated list of steps, e.g. "4e-3,2e-3,1e-3".
pub fn parse_h_values(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Validation(format!("bad step value {s:?}")))
        })
        .collect()
}

impl GridConfig {
    pub fn build(&self) -> Result<Grid, CliError> {
        Grid::new(self.a, self.h, self.n).map_err(|e| CliError::Validation(e.to_string()))
    }
}

impl OperatorConfig {
    pub fn kind(&self) -> Result<OperatorKind, CliError> {
        match self.kind.as_str() {
            "rl" | "riemann-liouville" => Ok(OperatorKind::RiemannLiouvilleGl),
            "jumarie" | "caputo" => Ok(OperatorKind::JumarieShiftedGl),
            "local" => Ok(OperatorKind::LocalQuotient),
            other => Err(CliError::Validation(format!(
                "unknown operator {other:?} (expected rl, jumarie, or local)"
            ))),
        }
    }

}
