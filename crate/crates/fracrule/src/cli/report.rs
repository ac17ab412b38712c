//! Machine-readable report emission: JSON (with content digest), CSV, SVG.
//!
//! JSON payloads have two top-level fields: `content`, which is a pure
//! function of the experiment inputs, and `metadata`, which carries the
//! timestamp, tool version, and the SHA-256 digest of the serialized
//! content. Re-running an experiment with identical configuration yields a
//! bitwise-identical `content` and therefore an identical digest, at any
//! thread count.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::analysis::{HadamardDecomposition, HolderEstimate};
use crate::core::SampledFunction;
use crate::operators::{LocalQuotientEstimate, OperatorSpec};
use crate::rules::{ConvergenceStudy, RuleReport};

use super::svg;
use super::CliError;

/// Everything a subcommand can produce.
#[derive(Debug)]
pub enum Report {
    Samples {
        samples: SampledFunction,
        operator: Option<OperatorSpec>,
    },
    Rule(RuleReport),
    Convergence(ConvergenceStudy),
    Holder {
        label: String,
        estimate: HolderEstimate,
    },
    Hadamard {
        decomposition: HadamardDecomposition,
        max_reconstruction_residual: f64,
    },
    LocalQuotient {
        alpha: f64,
        x0: f64,
        estimate: LocalQuotientEstimate,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

fn operator_fields(spec: &OperatorSpec) -> (Value, Value, Value) {
    (
        json!(spec.kind.name()),
        json!(spec.alpha()),
        json!(spec.base),
    )
}

fn rule_report_content(report: &RuleReport) -> Value {
    let grid = report.residual.grid();
    let (operator, alpha, base) = operator_fields(&report.operator);
    json!({
        "kind": "rule-report",
        "rule_name": report.rule_name,
        "alpha": alpha,
        "operator": operator,
        "base": base,
        "h": report.h,
        "burn_in": report.burn_in,
        "sup_norm": report.sup_norm,
        "l2_norm": report.l2_norm,
        "grid": { "a": grid.a(), "h": grid.h(), "n": grid.len() },
        "residual": report.residual.values(),
    })
}

impl Report {
    /// The digestible content object (no timestamps, no environment).
    pub fn content(&self) -> Value {
        match self {
            Report::Samples { samples, operator } => {
                let grid = samples.grid();
                let mut content = json!({
                    "kind": "samples",
                    "label": samples.label(),
                    "grid": { "a": grid.a(), "h": grid.h(), "n": grid.len() },
                    "values": samples.values(),
                });
                if let Some(spec) = operator {
                    let (op, alpha, base) = operator_fields(spec);
                    content["operator"] = op;
                    content["alpha"] = alpha;
                    content["base"] = base;
                }
                content
            }
            Report::Rule(report) => rule_report_content(report),
            Report::Convergence(study) => {
                let (operator, alpha, base) = operator_fields(&study.finest.operator);
                json!({
                    "kind": "convergence-report",
                    "rule_name": study.report.rule_name,
                    "alpha": alpha,
                    "operator": operator,
                    "base": base,
                    "h_values": study.report.h_values,
                    "norms": study.report.norms,
                    // +∞ (below the measurement floor) serializes as null.
                    "observed_order": study.report.observed_order,
                    "verdict": study.report.verdict,
                    "final_report": rule_report_content(&study.finest),
                })
            }
            Report::Holder { label, estimate } => json!({
                "kind": "holder-estimate",
                "label": label,
                "exponent_hat": estimate.exponent_hat,
                "coefficient_hat": estimate.coefficient_hat,
                "r_squared": estimate.r_squared,
                "scales_used": estimate.scales_used,
                "oscillations": estimate.oscillations,
            }),
            Report::Hadamard {
                decomposition,
                max_reconstruction_residual,
            } => {
                let grid = decomposition.g2_values.grid();
                json!({
                    "kind": "hadamard-decomposition",
                    "t0": decomposition.t0,
                    "f_t0": decomposition.f_t0,
                    "fprime_t0": decomposition.fprime_t0,
                    "grid": { "a": grid.a(), "h": grid.h(), "n": grid.len() },
                    "g2": decomposition.g2_values.values(),
                    "max_reconstruction_residual": max_reconstruction_residual,
                })
            }
            Report::LocalQuotient { alpha, x0, estimate } => json!({
                "kind": "local-quotient",
                "alpha": alpha,
                "x0": x0,
                "value": estimate.value,
                "last_correction": estimate.last_correction,
                "q_table": estimate.q_table,
            }),
        }
    }

    /// SHA-256 hex digest of the canonical (compact) content serialization.
    pub fn content_digest(&self) -> String {
        let canonical = serde_json::to_string(&self.content()).expect("content serializes");
        let mut hasher = Sha256::new();
        hasher.update(canonical.as_bytes());
        format!("{:x}", hasher.finalize())
    }

    /// Full JSON payload: content plus metadata (timestamp excluded from
    /// the digest).
    pub fn json_payload(&self) -> String {
        let digest = self.content_digest();
        let timestamp = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        let payload = json!({
            "content": self.content(),
            "metadata": {
                "content_digest": digest,
                "generated_unix_seconds": timestamp,
                "tool": format!("fracrule {}", env!("CARGO_PKG_VERSION")),
            },
        });
        let mut text = serde_json::to_string_pretty(&payload).expect("payload serializes");
        text.push('\n');
        text
    }

    /// CSV rendering: one row per grid point or per scale, RFC-4180-style
    /// with a header row and LF line endings.
    pub fn csv(&self) -> String {
        let mut out = String::new();
        match self {
            Report::Samples { samples, .. } => {
                out.push_str("x,value\n");
                let grid = samples.grid();
                for i in 0..grid.len() {
                    out.push_str(&format!("{},{}\n", grid.point(i), samples.value(i)));
                }
            }
            Report::Rule(report) => {
                out.push_str("x,residual\n");
                let grid = report.residual.grid();
                for i in 0..grid.len() {
                    out.push_str(&format!("{},{}\n", grid.point(i), report.residual.value(i)));
                }
            }
            Report::Convergence(study) => {
                out.push_str("h,sup_norm\n");
                for (h, norm) in study.report.h_values.iter().zip(&study.report.norms) {
                    out.push_str(&format!("{h},{norm}\n"));
                }
            }
            Report::Holder { estimate, .. } => {
                out.push_str("scale,oscillation\n");
                for (s, m) in estimate.scales_used.iter().zip(&estimate.oscillations) {
                    out.push_str(&format!("{s},{m}\n"));
                }
            }
            Report::Hadamard { decomposition, .. } => {
                out.push_str("t,g2\n");
                let grid = decomposition.g2_values.grid();
                for i in 0..grid.len() {
                    out.push_str(&format!(
                        "{},{}\n",
                        grid.point(i),
                        decomposition.g2_values.value(i)
                    ));
                }
            }
            Report::LocalQuotient { estimate, .. } => {
                out.push_str("h,q\n");
                for (h, q) in &estimate.q_table {
                    out.push_str(&format!("{h},{q}\n"));
                }
            }
        }
        out
    }

    /// Static SVG polyline chart of the report's primary series.
    pub fn svg(&self) -> String {
        match self {
            Report::Samples { samples, .. } => {
                let grid = samples.grid();
                let points: Vec<(f64, f64)> =
                    (0..grid.len()).map(|i| (grid.point(i), samples.value(i))).collect();
                svg::polyline_chart(samples.label(), "x", "value", &points, false)
            }
            Report::Rule(report) => {
                let grid = report.residual.grid();
                let points: Vec<(f64, f64)> = (0..grid.len())
                    .map(|i| (grid.point(i), report.residual.value(i)))
                    .collect();
                svg::polyline_chart(&report.rule_name, "x", "residual", &points, false)
            }
            Report::Convergence(study) => {
                let points: Vec<(f64, f64)> = study
                    .report
                    .h_values
                    .iter()
                    .zip(&study.report.norms)
                    .map(|(h, n)| (*h, *n))
                    .collect();
                svg::polyline_chart(
                    &format!("{} under refinement", study.report.rule_name),
                    "h",
                    "sup norm",
                    &points,
                    true,
                )
            }
            Report::Holder { label, estimate } => {
                let points: Vec<(f64, f64)> = estimate
                    .scales_used
                    .iter()
                    .zip(&estimate.oscillations)
                    .map(|(s, m)| (*s, *m))
                    .collect();
                svg::polyline_chart(
                    &format!("oscillation scaling of {label}"),
                    "scale",
                    "oscillation",
                    &points,
                    true,
                )
            }
            Report::Hadamard { decomposition, .. } => {
                let grid = decomposition.g2_values.grid();
                let points: Vec<(f64, f64)> = (0..grid.len())
                    .map(|i| (grid.point(i), decomposition.g2_values.value(i)))
                    .collect();
                svg::polyline_chart("g2", "t", "g2", &points, false)
            }
            Report::LocalQuotient { estimate, .. } => svg::polyline_chart(
                "local quotient",
                "h",
                "q",
                &estimate.q_table,
                false,
            ),
        }
    }

    /// One-paragraph human summary for stdout.
    pub fn summary(&self) -> String {
        match self {
            Report::Samples { samples, .. } => format!(
                "{}: {} samples on [{}, {}]",
                samples.label(),
                samples.grid().len(),
                samples.grid().a(),
                samples.grid().end()
            ),
            Report::Rule(r) => format!(
                "{}: sup-norm {:e}, l2-norm {:e} (burn-in {}, h = {})",
                r.rule_name, r.sup_norm, r.l2_norm, r.burn_in, r.h
            ),
            Report::Convergence(study) => format!(
                "{}: verdict {:?}, observed order {}, norms {:?}",
                study.report.rule_name,
                study.report.verdict,
                study.report.observed_order,
                study.report.norms
            ),
            Report::Holder { label, estimate } => format!(
                "{label}: exponent {:.4}, coefficient {:.4}, r^2 {:.4}",
                estimate.exponent_hat, estimate.coefficient_hat, estimate.r_squared
            ),
            Report::Hadamard {
                decomposition,
                max_reconstruction_residual,
            } => format!(
                "hadamard at t0 = {}: max reconstruction residual {:e}",
                decomposition.t0, max_reconstruction_residual
            ),
            Report::LocalQuotient { alpha, x0, estimate } => format!(
                "local quotient (alpha = {alpha}) at x0 = {x0}: {} (last correction {:e})",
                estimate.value, estimate.last_correction
            ),
        }
    }
}

/// Write bytes to `path` atomically: to a temp file in the same directory,
/// renamed into place on success.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let mut tmp: PathBuf = path.to_path_buf();
    let mut name = tmp
        .file_name()
        .map(|n| n.to_os_string())
        .unwrap_or_default();
    name.push(".tmp");
    tmp.set_file_name(name);
    let io_err = |source: std::io::Error| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    fs::write(&tmp, bytes).map_err(io_err)?;
    fs::rename(&tmp, path).map_err(io_err)?;
    Ok(())
}

pub fn emit_report(report: &Report, format: Format, path: &Path) -> Result<(), CliError> {
    let bytes = match format {
        Format::Json => report.json_payload().into_bytes(),
        Format::Csv => report.csv().into_bytes(),
        Format::Svg => report.svg().into_bytes(),
    };
    write_atomic(path, &bytes)
}
