//! Local (Kolwankar-type) fractional derivative estimator.
//!
//! Alternative formulations of fractional calculus define the derivative at
//! a point through the limit quotient
//! `q(h) = Γ(1+α) · (f(x₀+h) − f(x₀)) / h^α` as h ↓ 0. This module
//! estimates that limit from a finite step sequence, which is enough for
//! spot checks against the grid operators.

use crate::core::{gamma, FractionalOrder};

use super::OperatorError;

/// Result of [`local_frac_derivative`]: the extrapolated limit plus the raw
/// quotient table it was built from.
#[derive(Debug, Clone)]
pub struct LocalQuotientEstimate {
    /// Richardson-extrapolated limit of q(h) at h = 0.
    pub value: f64,
    /// The (h, q(h)) pairs, in the order given.
    pub q_table: Vec<(f64, f64)>,
    /// Magnitude of the last extrapolation correction; a rough error gauge.
    pub last_correction: f64,
}

/// Estimate the local fractional derivative of `f` at `x0`.
///
/// `h_sequence` must be strictly decreasing and positive. The quotients
/// q(h) are polynomial-extrapolated (Neville's scheme in h) to h = 0; for a
/// single step the raw quotient is returned unchanged.
pub fn local_frac_derivative(
    f: impl Fn(f64) -> f64,
    x0: f64,
    order: FractionalOrder,
    h_sequence: &[f64],
) -> Result<LocalQuotientEstimate, OperatorError> {
    if h_sequence.is_empty()
        || h_sequence
            .iter()
            .any(|h| !(h.is_finite() && *h > 0.0))
        || h_sequence.windows(2).any(|w| w[1] >= w[0])
    {
        return Err(OperatorError::BadStepSequence);
    }

    let alpha = order.value();
    let gamma_factor = gamma(1.0 + alpha).expect("1 + alpha > 0");
    let f0 = f(x0);
    if !f0.is_finite() {
        return Err(OperatorError::NonFiniteEvaluation { x: x0 });
    }

    let mut q_table = Vec::with_capacity(h_sequence.len());
    for &h in h_sequence {
        let fx = f(x0 + h);
        if !fx.is_finite() {
            return Err(OperatorError::NonFiniteEvaluation { x: x0 + h });
        }
        q_table.push((h, gamma_factor * (fx - f0) / h.powf(alpha)));
    }

    // Neville extrapolation of the q values to h = 0.
    let m = q_table.len();
    let mut tableau: Vec<f64> = q_table.iter().map(|(_, q)| *q).collect();
    let mut previous_apex = tableau[0];
    for level in 1..m {
        for i in 0..m - level {
            let h_lo = q_table[i].0;
            let h_hi = q_table[i + level].0;
            tableau[i] = (h_lo * tableau[i + 1] - h_hi * tableau[i]) / (h_lo - h_hi);
        }
        if level < m - 1 {
            previous_apex = tableau[0];
        }
    }
    let value = tableau[0];
    let last_correction = if m == 1 {
        0.0
    } else {
        (value - previous_apex).abs()
    };

    Ok(LocalQuotientEstimate {
        value,
        q_table,
        last_correction,
    })
}
