//! Measured residual reports.

use crate::core::{deterministic_sum, SampledFunction};
use crate::operators::OperatorSpec;

/// Pointwise residual of one algebraic-rule check, with norms taken over
/// the grid after a leading burn-in.
///
/// The burn-in masks the Grünwald–Letnikov start-up error near the lower
/// terminal, which is a discretization artifact rather than a property of
/// the rule being measured. For reports built by [`RuleReport::from_residual`]
/// the norms range over all retained residual entries; the
/// remainder-vanishing rule instead stores the magnitude of its single
/// claim point in both norms (see `remainder_vanishing_check`).
#[derive(Debug, Clone)]
pub struct RuleReport {
    pub rule_name: String,
    pub residual: SampledFunction,
    pub sup_norm: f64,
    pub l2_norm: f64,
    /// Leading grid points excluded from the norms.
    pub burn_in: usize,
    pub h: f64,
    pub operator: OperatorSpec,
}

pub(crate) fn default_burn_in(n: usize) -> usize {
    ((0.05 * n as f64).ceil() as usize).min(n - 1)
}

impl RuleReport {
    /// Build a report with burn-in ⌈0.05·n⌉ and norms over the rest.
    pub fn from_residual(
        rule_name: impl Into<String>,
        residual: SampledFunction,
        operator: OperatorSpec,
    ) -> Self {
        let burn_in = default_burn_in(residual.grid().len());
        Self::with_norms_from(rule_name, residual, operator, burn_in)
    }

    pub(crate) fn with_norms_from(
        rule_name: impl Into<String>,
        residual: SampledFunction,
        operator: OperatorSpec,
        burn_in: usize,
    ) -> Self {
        let h = residual.grid().h();
        let (sup_norm, l2_norm) = grid_norms(&residual, burn_in);
        Self {
            rule_name: rule_name.into(),
            residual,
            sup_norm,
            l2_norm,
            burn_in,
            h,
            operator,
        }
    }

    /// The same report with norms recomputed over indices ≥ `burn_in`.
    pub fn renormed(mut self, burn_in: usize) -> Self {
        let burn_in = burn_in.min(self.residual.grid().len() - 1);
        let (sup, l2) = grid_norms(&self.residual, burn_in);
        self.sup_norm = sup;
        self.l2_norm = l2;
        self.burn_in = burn_in;
        self
    }

    /// Residual value at the grid point `x`, when `x` lies on the grid.
    pub fn value_at(&self, x: f64) -> Option<f64> {
        self.residual
            .grid()
            .index_of(x)
            .map(|i| self.residual.value(i))
    }
}

fn grid_norms(residual: &SampledFunction, burn_in: usize) -> (f64, f64) {
    let values = &residual.values()[burn_in.min(residual.values().len())..];
    let sup = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let squares: Vec<f64> = values.iter().map(|v| v * v).collect();
    let l2 = (residual.grid().h() * deterministic_sum(&squares)).sqrt();
    (sup, l2)
}
