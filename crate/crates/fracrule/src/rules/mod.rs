//! Quantitative verification of the algebraic identities of fractional
//! derivatives: the Leibniz rule, the derived chain rule and its
//! remainder-vanishing step, the scale property, and the modified chain
//! rule — each measured as a pointwise residual and classified under grid
//! refinement.
//!
//! No rule here assumes its identity holds: the measured defect is the
//! finding. For inputs with closed-form fractional derivatives the residual
//! limits are known exactly (gamma-function expressions) and are pinned in
//! the tests; for nondifferentiable inputs only convergence verdicts are
//! asserted.

mod convergence;
mod identities;
mod report;
mod scaling;

pub use convergence::{
    convergence_study, ConvergenceReport, ConvergenceStudy, Verdict, VerdictConfig,
};
pub use identities::{leibniz_defect, remainder_vanishing_check, theorem_chain_residual};
pub use report::RuleReport;
pub use scaling::{modified_chain_residual, scale_property_residual};

use crate::analysis::AnalysisError;
use crate::core::CoreError;
use crate::operators::OperatorError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RuleError {
    #[error("sampled functions live on different grids")]
    GridMismatch,
    #[error("x0 = {x0} is not a grid point")]
    X0NotOnGrid { x0: f64 },
    #[error("the scale property requires lower terminal 0, got {base}")]
    NonZeroBase { base: f64 },
    #[error("lambda must be positive and finite, got {lambda}")]
    BadLambda { lambda: f64 },
    #[error("a convergence study needs at least 3 strictly decreasing positive steps")]
    BadStepLadder,
    #[error("step h = {h} does not tile the span {span} with an integer cell count")]
    NonConformingStep { h: f64, span: f64 },
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
}

/// Grid with step `h` spanning `[a, a + span]`, for refinement studies.
/// Fails unless `span/h` is an integer (within 1e-9 relative).
pub fn conforming_grid(a: f64, span: f64, h: f64) -> Result<crate::core::Grid, RuleError> {
    let cells = span / h;
    if !cells.is_finite() || (cells - cells.round()).abs() > 1e-9 * cells.abs().max(1.0) {
        return Err(RuleError::NonConformingStep { h, span });
    }
    Ok(crate::core::Grid::new(a, h, cells.round() as usize + 1)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conforming_grids() {
        let g = conforming_grid(0.0, 1.0, 4e-3).unwrap();
        assert_eq!(g.len(), 251);
        assert!(matches!(
            conforming_grid(0.0, 1.0, 3e-3),
            Err(RuleError::NonConformingStep { .. })
        ));
    }
}
