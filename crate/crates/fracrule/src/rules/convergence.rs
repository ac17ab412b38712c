//! Grid-refinement studies: rerun a rule at shrinking steps, fit the decay
//! order of its norm, and classify the defect as vanishing or persistent.

use serde::{Deserialize, Serialize};

use crate::analysis::least_squares_line;

use super::report::RuleReport;
use super::RuleError;

/// Classification of a measured rule residual under grid refinement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    /// The residual decays under refinement: a discretization artifact.
    Vanishes,
    /// The residual plateaus at a finite defect.
    Persists,
}

/// Thresholds for the verdict. Overridable from the CLI config.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerdictConfig {
    /// Minimum decay order for a vanishing verdict.
    pub order_min: f64,
    /// The finest-step sup-norm must fall below this absolute threshold.
    pub norm_threshold: f64,
    /// Norms at or below this value count as "at the determinism floor":
    /// indistinguishable from an exact identity in f64 arithmetic. When
    /// fewer than two norms sit above the floor the decay order is reported
    /// as +∞ (the residual converges faster than any measurable order).
    pub floor: f64,
}

impl Default for VerdictConfig {
    fn default() -> Self {
        Self {
            order_min: 0.5,
            norm_threshold: 1e-2,
            floor: 1e-13,
        }
    }
}

/// Outcome of one refinement study.
#[derive(Debug, Clone)]
pub struct ConvergenceReport {
    pub rule_name: String,
    /// Steps, strictly decreasing.
    pub h_values: Vec<f64>,
    /// Post-burn-in sup-norms, one per step.
    pub norms: Vec<f64>,
    /// Least-squares slope of log norm against log h over points above the
    /// floor; +∞ when the residual is at the floor throughout.
    pub observed_order: f64,
    pub verdict: Verdict,
}

/// A study plus the finest-step rule report it ended on.
#[derive(Debug, Clone)]
pub struct ConvergenceStudy {
    pub report: ConvergenceReport,
    pub finest: RuleReport,
}

/// Rerun `runner` for each step of `h_values` (strictly decreasing, at
/// least 3 entries), collect post-burn-in sup-norms, fit the observed
/// order, and assign the verdict:
/// vanishes ⇔ observed_order ≥ order_min AND final norm < norm_threshold.
pub fn convergence_study(
    rule_name: &str,
    h_values: &[f64],
    config: &VerdictConfig,
    mut runner: impl FnMut(f64) -> Result<RuleReport, RuleError>,
) -> Result<ConvergenceStudy, RuleError> {
    if h_values.len() < 3
        || h_values.iter().any(|h| !(h.is_finite() && *h > 0.0))
        || h_values.windows(2).any(|w| w[1] >= w[0])
    {
        return Err(RuleError::BadStepLadder);
    }

    let mut norms = Vec::with_capacity(h_values.len());
    let mut finest = None;
    for &h in h_values {
        let report = runner(h)?;
        norms.push(report.sup_norm);
        finest = Some(report);
    }
    let finest = finest.expect("at least three steps ran");

    let observed_order = fit_order(h_values, &norms, config.floor);
    let final_norm = *norms.last().expect("non-empty");
    let verdict = if observed_order >= config.order_min && final_norm < config.norm_threshold {
        Verdict::Vanishes
    } else {
        Verdict::Persists
    };

    Ok(ConvergenceStudy {
        report: ConvergenceReport {
            rule_name: rule_name.to_owned(),
            h_values: h_values.to_vec(),
            norms,
            observed_order,
            verdict,
        },
        finest,
    })
}

fn fit_order(h_values: &[f64], norms: &[f64], floor: f64) -> f64 {
    let points: Vec<(f64, f64)> = h_values
        .iter()
        .zip(norms)
        .filter(|(_, n)| **n > floor)
        .map(|(h, n)| (h.ln(), n.ln()))
        .collect();
    if points.len() < 2 {
        return f64::INFINITY;
    }
    let xs: Vec<f64> = points.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1).collect();
    least_squares_line(&xs, &ys).0
}
