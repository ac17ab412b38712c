//! Scale property and the modified chain rule for dilations w = λx.
//!
//! Both identities compare `D^α f(λx)` on a grid of step h against
//! `λ^α · (D^α f)` evaluated on the dilated grid of step λh, where index i
//! of one grid corresponds to the exact physical point λ·xᵢ of the other.
//! Matching grids by construction (rather than interpolating) keeps the
//! comparison an identity at corresponding points, so the measured residual
//! is purely the defect of the rule, not interpolation error.

use crate::core::{Grid, SampledFunction};
use crate::operators::{frac_derivative, OperatorSpec};

use super::report::RuleReport;
use super::RuleError;

fn dilation_residual(
    rule_name: &str,
    f: impl Fn(f64) -> f64,
    lambda: f64,
    spec: &OperatorSpec,
    grid: &Grid,
) -> Result<RuleReport, RuleError> {
    if spec.base != 0.0 {
        return Err(RuleError::NonZeroBase { base: spec.base });
    }
    if grid.a() != 0.0 {
        return Err(RuleError::NonZeroBase { base: grid.a() });
    }
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(RuleError::BadLambda { lambda });
    }

    // Left side: D^α applied to x ↦ f(λx) on [0, L].
    let composed = SampledFunction::sample(|x| f(lambda * x), *grid, "f(lambda x)")?;
    let lhs = frac_derivative(&composed, spec)?;

    // Right side: D^α f on the dilated grid [0, λL] (step λh), read at
    // w = λxᵢ, which is exactly index i.
    let dilated_grid = Grid::new(0.0, lambda * grid.h(), grid.len())?;
    let outer = SampledFunction::sample(&f, dilated_grid, "f")?;
    let rhs = frac_derivative(&outer, spec)?;

    let lambda_pow = lambda.powf(spec.alpha());
    let values: Vec<f64> = (0..grid.len())
        .map(|i| lhs.value(i) - lambda_pow * rhs.value(i))
        .collect();
    let residual = SampledFunction::new(*grid, values, rule_name)?;
    Ok(RuleReport::from_residual(rule_name, residual, *spec))
}

/// Residual of the scale property `D^α f(λx) = λ^α (D^α f)(w)|_{w=λx}`
/// for lower terminal 0.
pub fn scale_property_residual(
    f: impl Fn(f64) -> f64,
    lambda: f64,
    spec: &OperatorSpec,
    grid: &Grid,
) -> Result<RuleReport, RuleError> {
    dilation_residual("scale_property", f, lambda, spec, grid)
}

/// Residual of the modified chain rule
/// `D^α(f∘w) = [(D^α f)∘w]·(w′)^α` for the differentiable inner function
/// w = λx (so (w′)^α = λ^α).
///
/// For dilations this is the scale property rewritten — the two rules share
/// one computation and differ only in the identity they instantiate — so
/// any measured defect of one is a defect of the other.
pub fn modified_chain_residual(
    f: impl Fn(f64) -> f64,
    lambda: f64,
    spec: &OperatorSpec,
    grid: &Grid,
) -> Result<RuleReport, RuleError> {
    dilation_residual("modified_chain", f, lambda, spec, grid)
}
