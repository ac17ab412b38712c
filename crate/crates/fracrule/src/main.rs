use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use fracrule::cli::{
    self, parse_grid_flag, parse_h_values, CliError, ExperimentConfig, ExperimentKind,
    OperatorConfig, RunSummary,
};

/// Fractional-derivative experiments with reproducible reports.
///
/// Every subcommand runs one experiment and writes the outputs declared by
/// --json/--csv/--svg; with no output flags the CSV rendering goes to
/// stdout. A JSON config file (--config) mirrors the flags; flags override
/// the file. Exit codes: 0 success, 2 invalid configuration, 1 runtime
/// failure. The environment variable FRACRULE_THREADS (positive integer)
/// caps library parallelism without affecting any output bit.
#[derive(Parser)]
#[command(name = "fracrule", version, about, long_about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Default)]
struct CommonArgs {
    /// JSON config file mirroring the flags (flags override the file).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the JSON report (content + metadata with digest) here.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Write the CSV report here.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Write a static SVG chart here.
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args, Default)]
struct OperatorArgs {
    /// Fractional order alpha in (0, 1].
    #[arg(long)]
    alpha: Option<f64>,
    /// Operator: rl, jumarie, or local (derive only).
    #[arg(long)]
    op: Option<String>,
    /// Lower terminal; defaults to the grid origin.
    #[arg(long)]
    base: Option<f64>,
}

#[derive(Args, Default)]
struct StudyArgs {
    /// Refinement ladder, e.g. 4e-3,2e-3,1e-3 (decreasing steps).
    #[arg(long, value_name = "H1,H2,...")]
    h_values: Option<String>,
    /// Minimum decay order for a "vanishes" verdict (default 0.5).
    #[arg(long)]
    order_min: Option<f64>,
    /// Absolute sup-norm threshold for a "vanishes" verdict (default 1e-2).
    #[arg(long)]
    norm_threshold: Option<f64>,
    /// Norms at or below this value count as exactly converged (default 1e-13).
    #[arg(long)]
    floor: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Apply a fractional derivative to a named function.
    Derive {
        #[command(flatten)]
        operator: OperatorArgs,
        /// Function constructor, e.g. power:2, sin, weierstrass:0.5:2:40.
        #[arg(long)]
        f: Option<String>,
        /// Grid as a:h:n.
        #[arg(long)]
        grid: Option<String>,
        /// Evaluation point for --op local.
        #[arg(long)]
        x0: Option<f64>,
        /// Step sequence for --op local, e.g. 0.1,0.05,0.025.
        #[arg(long, value_name = "H1,H2,...")]
        h_values: Option<String>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Tabulate a truncated Weierstrass series.
    Weierstrass {
        /// Series parameters alpha:b:n_terms, e.g. 0.5:2:40.
        #[arg(long)]
        params: Option<String>,
        #[arg(long)]
        grid: Option<String>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Estimate a Hölder exponent from oscillation scaling.
    Holder {
        /// Any function constructor.
        #[arg(long)]
        f: Option<String>,
        /// Shorthand for --f weierstrass:ALPHA:B:N.
        #[arg(long, value_name = "ALPHA:B:N")]
        weierstrass: Option<String>,
        #[arg(long)]
        grid: Option<String>,
        /// Number of dyadic scales (default: min(12, log2 n)).
        #[arg(long)]
        num_scales: Option<u32>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Tabulate the second-order Hadamard decomposition of a smooth function.
    Hadamard {
        #[arg(long)]
        f: Option<String>,
        /// Expansion point.
        #[arg(long)]
        t0: Option<f64>,
        #[arg(long)]
        grid: Option<String>,
        /// Gauss–Legendre nodes for the g2 integral (default 32).
        #[arg(long)]
        quad_points: Option<usize>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Measure the Leibniz defect D^a(fg) − (D^a f)g − f(D^a g) under refinement.
    VerifyLeibniz {
        #[command(flatten)]
        operator: OperatorArgs,
        #[arg(long)]
        f: Option<String>,
        #[arg(long)]
        g: Option<String>,
        #[arg(long)]
        grid: Option<String>,
        #[command(flatten)]
        study: StudyArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Measure the chain-rule residual D^a(f∘w) − f'(w)·D^a w.
    VerifyChain {
        #[command(flatten)]
        operator: OperatorArgs,
        /// Outer function (must be smooth).
        #[arg(long)]
        f: Option<String>,
        /// Inner function, sampled on the grid.
        #[arg(long)]
        w: Option<String>,
        /// Point the identity is evaluated at (must lie on every grid).
        #[arg(long)]
        x0: Option<f64>,
        #[arg(long)]
        grid: Option<String>,
        #[command(flatten)]
        study: StudyArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Measure the remainder term D^a[g2(w)(w−w(x0))²] at x0.
    VerifyRemainder {
        #[command(flatten)]
        operator: OperatorArgs,
        /// Outer function (must be twice differentiable).
        #[arg(long)]
        f: Option<String>,
        #[arg(long)]
        w: Option<String>,
        #[arg(long)]
        x0: Option<f64>,
        #[arg(long)]
        grid: Option<String>,
        #[arg(long)]
        quad_points: Option<usize>,
        #[command(flatten)]
        study: StudyArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Measure the scale-property residual D^a f(λx) − λ^a (D^a f)(λx).
    VerifyScale {
        #[command(flatten)]
        operator: OperatorArgs,
        #[arg(long)]
        f: Option<String>,
        /// Dilation factor λ > 0.
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long)]
        grid: Option<String>,
        #[command(flatten)]
        study: StudyArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Measure the modified chain rule D^a(f∘w) − [(D^a f)∘w]·(w')^a for w = λx.
    VerifyModifiedChain {
        #[command(flatten)]
        operator: OperatorArgs,
        #[arg(long)]
        f: Option<String>,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long)]
        grid: Option<String>,
        #[command(flatten)]
        study: StudyArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run a named rule over an explicit refinement ladder.
    Converge {
        /// One of: leibniz, chain, remainder, scale, modified-chain.
        #[arg(long)]
        rule: Option<String>,
        #[command(flatten)]
        operator: OperatorArgs,
        #[arg(long)]
        f: Option<String>,
        #[arg(long)]
        g: Option<String>,
        #[arg(long)]
        w: Option<String>,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long)]
        x0: Option<f64>,
        #[arg(long)]
        quad_points: Option<usize>,
        #[arg(long)]
        grid: Option<String>,
        #[command(flatten)]
        study: StudyArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match build_and_run(cli.command) {
        Ok(summary) => {
            for path in &summary.files {
                eprintln!("wrote {}", path.display());
            }
            eprintln!("content-digest: {}", summary.content_digest);
            match summary.stdout_body {
                Some(body) => print!("{body}"),
                None => println!("{}", summary.summary),
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

fn build_and_run(command: Command) -> Result<RunSummary, CliError> {
    let config = build_config(command)?;
    cli::run(&config)
}

/// Start from the config file when given, then let flags override.
fn base_config(common: &CommonArgs, kind: ExperimentKind) -> Result<ExperimentConfig, CliError> {
    let mut cfg = match &common.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            ExperimentConfig::from_json(&text)?
        }
        None => ExperimentConfig::new(kind),
    };
    cfg.experiment = kind;
    if let Some(path) = &common.json {
        cfg.output.json = Some(path.clone());
    }
    if let Some(path) = &common.csv {
        cfg.output.csv = Some(path.clone());
    }
    if let Some(path) = &common.svg {
        cfg.output.svg = Some(path.clone());
    }
    Ok(cfg)
}

fn apply_operator(cfg: &mut ExperimentConfig, args: &OperatorArgs) {
    if args.alpha.is_none() && args.op.is_none() && args.base.is_none() {
        return;
    }
    let op = cfg.operator.get_or_insert(OperatorConfig {
        kind: "rl".into(),
        alpha: f64::NAN,
        base: None,
    });
    if let Some(kind) = &args.op {
        op.kind = kind.clone();
    }
    if let Some(alpha) = args.alpha {
        op.alpha = alpha;
    }
    if let Some(base) = args.base {
        op.base = Some(base);
    }
}

fn apply_grid(cfg: &mut ExperimentConfig, grid: &Option<String>) -> Result<(), CliError> {
    if let Some(text) = grid {
        cfg.grid = Some(parse_grid_flag(text)?);
    }
    Ok(())
}

fn apply_h_values(cfg: &mut ExperimentConfig, text: &Option<String>) -> Result<(), CliError> {
    if let Some(text) = text {
        cfg.h_values = Some(parse_h_values(text)?);
    }
    Ok(())
}

fn apply_study(cfg: &mut ExperimentConfig, study: &StudyArgs) -> Result<(), CliError> {
    apply_h_values(cfg, &study.h_values)?;
    if study.order_min.is_some() || study.norm_threshold.is_some() || study.floor.is_some() {
        let mut thresholds = cfg.thresholds.unwrap_or_default();
        if let Some(v) = study.order_min {
            thresholds.order_min = v;
        }
        if let Some(v) = study.norm_threshold {
            thresholds.norm_threshold = v;
        }
        if let Some(v) = study.floor {
            thresholds.floor = v;
        }
        cfg.thresholds = Some(thresholds);
    }
    Ok(())
}

fn set_if_given<T: Clone>(slot: &mut Option<T>, value: &Option<T>) {
    if let Some(v) = value {
        *slot = Some(v.clone());
    }
}

fn build_config(command: Command) -> Result<ExperimentConfig, CliError> {
    match command {
        Command::Derive {
            operator,
            f,
            grid,
            x0,
            h_values,
            common,
        } => {
            let mut cfg = base_config(&common, ExperimentKind::Derive)?;
            apply_operator(&mut cfg, &operator);
            set_if_given(&mut cfg.f, &f);
            apply_grid(&mut cfg, &grid)?;
            set_if_given(&mut cfg.x0, &x0);
            apply_h_values(&mut cfg, &h_values)?;
            Ok(cfg)
        }
        Command::Weierstrass {
            params,
            grid,
            common,
        } => {
            let mut cfg = base_config(&common, ExperimentKind::Weierstrass)?;
            if let Some(p) = params {
                cfg.f = Some(format!("weierstrass:{p}"));
            }
            apply_grid(&mut cfg, &grid)?;
            Ok(cfg)
        }
        Command::Holder {
            f,
            weierstrass,
            grid,
            num_scales,
            common,
        } => {
            let mut cfg = base_config(&common, ExperimentKind::Holder)?;
            set_if_given(&mut cfg.f, &f);
            if let Some(p) = weierstrass {
                cfg.f = Some(format!("weierstrass:{p}"));
            }
            apply_grid(&mut cfg, &grid)?;
            set_if_given(&mut cfg.num_scales, &num_scales);
            Ok(cfg)
        }
        Command::Hadamard {
            f,
            t0,
            grid,
            quad_points,
            common,
        } => {
            let mut cfg = base_config(&common, ExperimentKind::Hadamard)?;
            set_if_given(&mut cfg.f, &f);
            set_if_given(&mut cfg.t0, &t0);
            apply_grid(&mut cfg, &grid)?;
            set_if_given(&mut cfg.quad_points, &quad_points);
            Ok(cfg)
        }
        Command::VerifyLeibniz {
            operator,
            f,
            g,
            grid,
            study,
            common,
        } => {
            let mut cfg = base_config(&common, ExperimentKind::VerifyLeibniz)?;
            apply_operator(&mut cfg, &operator);
            set_if_given(&mut cfg.f, &f);
            set_if_given(&mut cfg.g, &g);
            apply_grid(&mut cfg, &grid)?;
            apply_study(&mut cfg, &study)?;
            Ok(cfg)
        }
        Command::VerifyChain {
            operator,
            f,
            w,
            x0,
            grid,
            study,
            common,
        } => {
            let mut cfg = base_config(&common, ExperimentKind::VerifyChain)?;
            apply_operator(&mut cfg, &operator);
            set_if_given(&mut cfg.f, &f);
            set_if_given(&mut cfg.w, &w);
            set_if_given(&mut cfg.x0, &x0);
            apply_grid(&mut cfg, &grid)?;
            apply_study(&mut cfg, &study)?;
            Ok(cfg)
        }
        Command::VerifyRemainder {
            operator,
            f,
            w,
            x0,
            grid,
            quad_points,
            study,
            common,
        } => {
            let mut cfg = base_config(&common, ExperimentKind::VerifyRemainder)?;
            apply_operator(&mut cfg, &operator);
            set_if_given(&mut cfg.f, &f);
            set_if_given(&mut cfg.w, &w);
            set_if_given(&mut cfg.x0, &x0);
            set_if_given(&mut cfg.quad_points, &quad_points);
            apply_grid(&mut cfg, &grid)?;
            apply_study(&mut cfg, &study)?;
            Ok(cfg)
        }
        Command::VerifyScale {
            operator,
            f,
            lambda,
            grid,
            study,
            common,
        } => {
            let mut cfg = base_config(&common, ExperimentKind::VerifyScale)?;
            apply_operator(&mut cfg, &operator);
            set_if_given(&mut cfg.f, &f);
            set_if_given(&mut cfg.lambda, &lambda);
            apply_grid(&mut cfg, &grid)?;
            apply_study(&mut cfg, &study)?;
            Ok(cfg)
        }
        Command::VerifyModifiedChain {
            operator,
            f,
            lambda,
            grid,
            study,
            common,
        } => {
            let mut cfg = base_config(&common, ExperimentKind::VerifyModifiedChain)?;
            apply_operator(&mut cfg, &operator);
            set_if_given(&mut cfg.f, &f);
            set_if_given(&mut cfg.lambda, &lambda);
            apply_grid(&mut cfg, &grid)?;
            apply_study(&mut cfg, &study)?;
            Ok(cfg)
        }
        Command::Converge {
            rule,
            operator,
            f,
            g,
            w,
            lambda,
            x0,
            quad_points,
            grid,
            study,
            common,
        } => {
            let mut cfg = base_config(&common, ExperimentKind::Converge)?;
            apply_operator(&mut cfg, &operator);
            set_if_given(&mut cfg.rule, &rule);
            set_if_given(&mut cfg.f, &f);
            set_if_given(&mut cfg.g, &g);
            set_if_given(&mut cfg.w, &w);
            set_if_given(&mut cfg.lambda, &lambda);
            set_if_given(&mut cfg.x0, &x0);
            set_if_given(&mut cfg.quad_points, &quad_points);
            apply_grid(&mut cfg, &grid)?;
            apply_study(&mut cfg, &study)?;
            Ok(cfg)
        }
    }
}
