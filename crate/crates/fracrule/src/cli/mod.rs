//! Command-line front end: named experiments, configuration, and
//! machine-readable reports.
//!
//! Every subcommand builds one [`ExperimentConfig`] (from flags, from a JSON
//! config file, or both — flags override the file), validates it fully
//! before any computation, and emits the declared outputs atomically.
//! Exit codes: 0 success, 2 validation failure, 1 runtime failure.

mod config;
mod report;
mod svg;

pub use config::{
    parse_grid_flag, parse_h_values, ExperimentConfig, ExperimentKind, FunctionSpec, GridConfig,
    OperatorConfig, OutputConfig,
};
pub use report::{emit_report, write_atomic, Format, Report};

use std::path::PathBuf;

use thiserror::Error;

use crate::analysis::{hadamard_decompose, holder_estimate, AnalysisError};
use crate::core::{CoreError, Grid, SampledFunction};
use crate::operators::{
    frac_derivative, local_frac_derivative, OperatorError, OperatorKind, OperatorSpec,
};
use crate::rules::{
    conforming_grid, convergence_study, leibniz_defect, modified_chain_residual,
    remainder_vanishing_check, scale_property_residual, theorem_chain_residual, RuleError,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Validation(String),
    #[error("i/o failure on {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Rule(#[from] RuleError),
}

impl CliError {
    /// 2 for validation failures, 1 for runtime failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            _ => 1,
        }
    }
}

/// What a run produced: the digest of the report content, a one-line
/// summary, the files written, and (when no files were requested) a CSV
/// body for stdout.
#[derive(Debug)]
pub struct RunSummary {
    pub content_digest: String,
    pub summary: String,
    pub files: Vec<PathBuf>,
    pub stdout_body: Option<String>,
}

/// Validate and execute one experiment, writing the declared outputs.
pub fn run(config: &ExperimentConfig) -> Result<RunSummary, CliError> {
    validate_thread_env()?;
    let report = dispatch(config)?;
    emit(config, &report)
}

fn validate_thread_env() -> Result<(), CliError> {
    if let Ok(raw) = std::env::var("FRACRULE_THREADS") {
        let ok = raw.trim().parse::<usize>().map(|t| t >= 1).unwrap_or(false);
        if !ok {
            return Err(CliError::Validation(format!(
                "FRACRULE_THREADS must be a positive integer, got {raw:?}"
            )));
        }
    }
    Ok(())
}

fn dispatch(config: &ExperimentConfig) -> Result<Report, CliError> {
    match config.experiment {
        ExperimentKind::Derive => run_derive(config),
        ExperimentKind::Weierstrass => run_weierstrass(config),
        ExperimentKind::Holder => run_holder(config),
        ExperimentKind::Hadamard => run_hadamard(config),
        ExperimentKind::VerifyLeibniz => run_study(config, RuleName::Leibniz),
        ExperimentKind::VerifyChain => run_study(config, RuleName::Chain),
        ExperimentKind::VerifyRemainder => run_study(config, RuleName::Remainder),
        ExperimentKind::VerifyScale => run_study(config, RuleName::Scale),
        ExperimentKind::VerifyModifiedChain => run_study(config, RuleName::ModifiedChain),
        ExperimentKind::Converge => {
            let rule = required_str(&config.rule, "--rule")?;
            if config.h_values.is_none() {
                return Err(CliError::Validation(
                    "converge requires an explicit --h-values ladder".into(),
                ));
            }
            run_study(config, RuleName::parse(rule)?)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum RuleName {
    Leibniz,
    Chain,
    Remainder,
    Scale,
    ModifiedChain,
}

impl RuleName {
    fn parse(text: &str) -> Result<Self, CliError> {
        match text {
            "leibniz" => Ok(RuleName::Leibniz),
            "chain" => Ok(RuleName::Chain),
            "remainder" => Ok(RuleName::Remainder),
            "scale" => Ok(RuleName::Scale),
            "modified-chain" => Ok(RuleName::ModifiedChain),
            other => Err(CliError::Validation(format!(
                "unknown rule {other:?} (expected leibniz, chain, remainder, scale, modified-chain)"
            ))),
        }
    }

    fn label(&self) -> &'static str {
        match self {
            RuleName::Leibniz => "leibniz_defect",
            RuleName::Chain => "theorem_chain",
            RuleName::Remainder => "remainder_vanishing",
            RuleName::Scale => "scale_property",
            RuleName::ModifiedChain => "modified_chain",
        }
    }
}

fn required<'a, T>(opt: &'a Option<T>, what: &str) -> Result<&'a T, CliError> {
    opt.as_ref()
        .ok_or_else(|| CliError::Validation(format!("missing required parameter: {what}")))
}

fn required_str<'a>(opt: &'a Option<String>, what: &str) -> Result<&'a str, CliError> {
    Ok(required(opt, what)?.as_str())
}

fn parse_function(field: &Option<String>, what: &str) -> Result<FunctionSpec, CliError> {
    FunctionSpec::parse(required_str(field, what)?)
}

/// The grid operator from the config, defaulting the base to the grid
/// origin and rejecting a mismatch up front.
fn grid_operator(config: &ExperimentConfig, grid: &Grid) -> Result<OperatorSpec, CliError> {
    let op_cfg = required(&config.operator, "--op/--alpha")?;
    let spec = op_cfg.build_with_default_base(grid.a())?;
    if spec.kind == OperatorKind::LocalQuotient {
        return Err(CliError::Validation(
            "this experiment needs a grid operator (rl or jumarie)".into(),
        ));
    }
    if spec.base != grid.a() {
        return Err(CliError::Validation(format!(
            "operator base {} must equal the grid origin {}",
            spec.base,
            grid.a()
        )));
    }
    Ok(spec)
}

fn sample_spec(spec: &FunctionSpec, grid: Grid) -> Result<SampledFunction, CliError> {
    Ok(SampledFunction::sample(
        |x| spec.eval(x),
        grid,
        spec.describe(),
    )?)
}

fn run_derive(config: &ExperimentConfig) -> Result<Report, CliError> {
    let f_spec = parse_function(&config.f, "--f")?;
    let op_cfg = required(&config.operator, "--op/--alpha")?;
    if op_cfg.kind()? == OperatorKind::LocalQuotient {
        let x0 = *required(&config.x0, "--x0")?;
        let h_values = required(&config.h_values, "--h-values")?.clone();
        let spec = op_cfg.build_with_default_base(x0)?;
        let estimate = local_frac_derivative(|x| f_spec.eval(x), x0, spec.order, &h_values)
            .map_err(|e| match e {
                OperatorError::BadStepSequence => CliError::Validation(e.to_string()),
                other => CliError::Operator(other),
            })?;
        return Ok(Report::LocalQuotient {
            alpha: spec.alpha(),
            x0,
            estimate,
        });
    }

    let grid = required(&config.grid, "--grid")?.build()?;
    let spec = grid_operator(config, &grid)?;
    let sampled = sample_spec(&f_spec, grid)?;
    let derived = frac_derivative(&sampled, &spec)?;
    Ok(Report::Samples {
        samples: derived,
        operator: Some(spec),
    })
}

fn run_weierstrass(config: &ExperimentConfig) -> Result<Report, CliError> {
    let f_spec = parse_function(&config.f, "--params")?;
    if !matches!(f_spec, FunctionSpec::Weierstrass(_)) {
        return Err(CliError::Validation(
            "the weierstrass experiment takes a weierstrass:alpha:b:n constructor".into(),
        ));
    }
    let grid = required(&config.grid, "--grid")?.build()?;
    let sampled = sample_spec(&f_spec, grid)?;
    Ok(Report::Samples {
        samples: sampled,
        operator: None,
    })
}

fn run_holder(config: &ExperimentConfig) -> Result<Report, CliError> {
    let f_spec = parse_function(&config.f, "--f/--weierstrass")?;
    let grid = required(&config.grid, "--grid")?.build()?;
    let num_scales = config.num_scales.unwrap_or_else(|| {
        let floor_log2 = usize::BITS - 1 - grid.len().leading_zeros();
        floor_log2.clamp(4, 12)
    });
    let sampled = sample_spec(&f_spec, grid)?;
    let estimate = holder_estimate(&sampled, num_scales).map_err(|e| match e {
        AnalysisError::InsufficientGrid { .. } | AnalysisError::TooFewScales(_) => {
            CliError::Validation(e.to_string())
        }
        other => CliError::Analysis(other),
    })?;
    Ok(Report::Holder {
        label: f_spec.describe(),
        estimate,
    })
}

fn run_hadamard(config: &ExperimentConfig) -> Result<Report, CliError> {
    let f_spec = parse_function(&config.f, "--f")?;
    let (fprime, fpp) = differentiable_pair(&f_spec)?;
    let t0 = *required(&config.t0, "--t0")?;
    let grid = required(&config.grid, "--grid")?.build()?;
    let quad_points = config.quad_points.unwrap_or(32);
    if quad_points < 2 {
        return Err(CliError::Validation(format!(
            "--quad-points must be at least 2, got {quad_points}"
        )));
    }
    let decomposition = hadamard_decompose(
        |t| f_spec.eval(t),
        fprime,
        fpp,
        t0,
        grid,
        quad_points,
    )
    .map_err(|e| match e {
        AnalysisError::T0OutOfRange { .. } => CliError::Validation(e.to_string()),
        other => CliError::Analysis(other),
    })?;
    let max_reconstruction_residual =
        decomposition.max_reconstruction_residual(|t| f_spec.eval(t));
    Ok(Report::Hadamard {
        decomposition,
        max_reconstruction_residual,
    })
}

type Derivative = Box<dyn Fn(f64) -> f64 + Send + Sync>;

fn differentiable_pair(spec: &FunctionSpec) -> Result<(Derivative, Derivative), CliError> {
    let fprime = spec.derivative().ok_or_else(|| {
        CliError::Validation(format!(
            "{} is not differentiable; pick a smooth constructor",
            spec.describe()
        ))
    })?;
    let fpp = spec.second_derivative().ok_or_else(|| {
        CliError::Validation(format!(
            "{} is not twice differentiable; pick a smooth constructor",
            spec.describe()
        ))
    })?;
    Ok((fprime, fpp))
}

fn run_study(config: &ExperimentConfig, rule: RuleName) -> Result<Report, CliError> {
    let grid_cfg = required(&config.grid, "--grid")?;
    let grid = grid_cfg.build()?;
    let spec = grid_operator(config, &grid)?;
    let span = (grid.len() - 1) as f64 * grid.h();
    let a = grid.a();

    let h_values = match &config.h_values {
        Some(values) => values.clone(),
        // Default refinement ladder ending at the configured grid step.
        None => vec![4.0 * grid.h(), 2.0 * grid.h(), grid.h()],
    };
    if h_values.len() < 3
        || h_values.iter().any(|h| !(h.is_finite() && *h > 0.0))
        || h_values.windows(2).any(|w| w[1] >= w[0])
    {
        return Err(CliError::Validation(
            "--h-values must list at least 3 strictly decreasing positive steps".into(),
        ));
    }
    for &h in &h_values {
        let cells = span / h;
        if (cells - cells.round()).abs() > 1e-9 * cells.abs().max(1.0) {
            return Err(CliError::Validation(format!(
                "step {h} does not tile the span {span} with an integer cell count"
            )));
        }
    }

    let thresholds = config.thresholds.unwrap_or_default();

    // Per-rule inputs, validated before any computation.
    let study = match rule {
        RuleName::Leibniz => {
            let f_spec = parse_function(&config.f, "--f")?;
            let g_spec = parse_function(&config.g, "--g")?;
            convergence_study(rule.label(), &h_values, &thresholds, |h| {
                let grid = conforming_grid(a, span, h)?;
                let f = SampledFunction::sample(|x| f_spec.eval(x), grid, f_spec.describe())?;
                let g = SampledFunction::sample(|x| g_spec.eval(x), grid, g_spec.describe())?;
                leibniz_defect(&f, &g, &spec)
            })?
        }
        RuleName::Chain => {
            let f_spec = parse_function(&config.f, "--f")?;
            let (fprime, _) = differentiable_pair(&f_spec)?;
            let w_spec = parse_function(&config.w, "--w")?;
            let x0 = *required(&config.x0, "--x0")?;
            validate_x0_on_ladder(a, x0, &h_values)?;
            convergence_study(rule.label(), &h_values, &thresholds, |h| {
                let grid = conforming_grid(a, span, h)?;
                let w = SampledFunction::sample(|x| w_spec.eval(x), grid, w_spec.describe())?;
                theorem_chain_residual(|t| f_spec.eval(t), &fprime, &w, &spec, x0)
            })?
        }
        RuleName::Remainder => {
            let f_spec = parse_function(&config.f, "--f")?;
            let (_, fpp) = differentiable_pair(&f_spec)?;
            let w_spec = parse_function(&config.w, "--w")?;
            let x0 = *required(&config.x0, "--x0")?;
            let quad_points = config.quad_points.unwrap_or(32);
            validate_x0_on_ladder(a, x0, &h_values)?;
            convergence_study(rule.label(), &h_values, &thresholds, |h| {
                let grid = conforming_grid(a, span, h)?;
                let w = SampledFunction::sample(|x| w_spec.eval(x), grid, w_spec.describe())?;
                remainder_vanishing_check(&fpp, &w, &spec, x0, quad_points)
            })?
        }
        RuleName::Scale | RuleName::ModifiedChain => {
            let f_spec = parse_function(&config.f, "--f")?;
            let lambda = *required(&config.lambda, "--lambda")?;
            if !(lambda.is_finite() && lambda > 0.0) {
                return Err(CliError::Validation(format!(
                    "--lambda must be positive and finite, got {lambda}"
                )));
            }
            if spec.base != 0.0 || a != 0.0 {
                return Err(CliError::Validation(
                    "the scale property requires base 0 and a grid starting at 0".into(),
                ));
            }
            let eval = |x: f64| f_spec.eval(x);
            convergence_study(rule.label(), &h_values, &thresholds, |h| {
                let grid = conforming_grid(a, span, h)?;
                match rule {
                    RuleName::Scale => scale_property_residual(eval, lambda, &spec, &grid),
                    _ => modified_chain_residual(eval, lambda, &spec, &grid),
                }
            })?
        }
    };
    Ok(Report::Convergence(study))
}

fn validate_x0_on_ladder(a: f64, x0: f64, h_values: &[f64]) -> Result<(), CliError> {
    for &h in h_values {
        let steps = (x0 - a) / h;
        if !(steps.is_finite() && steps >= 0.0)
            || (steps - steps.round()).abs() > 1e-9 * steps.abs().max(1.0)
        {
            return Err(CliError::Validation(format!(
                "--x0 {x0} is not a grid point at step {h}"
            )));
        }
    }
    Ok(())
}

fn emit(config: &ExperimentConfig, report: &Report) -> Result<RunSummary, CliError> {
    let digest = report.content_digest();
    let mut files = Vec::new();
    if let Some(path) = &config.output.json {
        emit_report(report, Format::Json, path)?;
        files.push(path.clone());
    }
    if let Some(path) = &config.output.csv {
        emit_report(report, Format::Csv, path)?;
        files.push(path.clone());
    }
    if let Some(path) = &config.output.svg {
        emit_report(report, Format::Svg, path)?;
        files.push(path.clone());
    }
    let stdout_body = if files.is_empty() {
        Some(report.csv())
    } else {
        None
    };
    Ok(RunSummary {
        content_digest: digest,
        summary: report.summary(),
        files,
        stdout_body,
    })
}

impl OperatorConfig {
    /// Build the operator spec, defaulting an unset base to `default_base`.
    pub fn build_with_default_base(&self, default_base: f64) -> Result<OperatorSpec, CliError> {
        let order = crate::core::FractionalOrder::new(self.alpha)
            .map_err(|e| CliError::Validation(e.to_string()))?;
        Ok(OperatorSpec::new(
            self.kind()?,
            order,
            self.base.unwrap_or(default_base),
        ))
    }
}
