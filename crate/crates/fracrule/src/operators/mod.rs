//! Discretized fractional derivative operators of order 0 < α ≤ 1.
//!
//! Two grid operators are provided, both realized through the
//! Grünwald–Letnikov convolution:
//!
//! * [`OperatorKind::RiemannLiouvilleGl`] — the plain GL sum, which
//!   discretizes the Riemann–Liouville derivative with lower terminal at
//!   the grid origin.
//! * [`OperatorKind::JumarieShiftedGl`] — the same convolution applied to
//!   `f − f(a)`. It annihilates constants bitwise and, for continuously
//!   differentiable inputs and 0 < α < 1, coincides with the Caputo
//!   derivative (see the equivalence test in this module).
//!
//! The third kind, [`OperatorKind::LocalQuotient`], is not a grid operator;
//! it lives in [`local_frac_derivative`] and measures the local fractional
//! limit quotient at a single point.

mod local;
mod weights;

pub use local::{local_frac_derivative, LocalQuotientEstimate};
pub use weights::gl_weights;

use crate::core::{thread_budget, CompensatedSum, CoreError, FractionalOrder, SampledFunction};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OperatorError {
    #[error("operator base {base} does not match grid origin {grid_a}")]
    BaseMismatch { base: f64, grid_a: f64 },
    #[error("the local quotient estimator is not a grid operator; use local_frac_derivative")]
    LocalQuotientOnGrid,
    #[error("step sequence must be non-empty, positive, and strictly decreasing")]
    BadStepSequence,
    #[error("function evaluation at x = {x} is not finite")]
    NonFiniteEvaluation { x: f64 },
    #[error(transparent)]
    Core(#[from] CoreError),
}

/// Which realization of the fractional derivative to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    RiemannLiouvilleGl,
    JumarieShiftedGl,
    LocalQuotient,
}

impl OperatorKind {
    pub fn name(&self) -> &'static str {
        match self {
            OperatorKind::RiemannLiouvilleGl => "riemann_liouville_gl",
            OperatorKind::JumarieShiftedGl => "jumarie_shifted_gl",
            OperatorKind::LocalQuotient => "local_quotient",
        }
    }
}

/// A fully specified operator: kind, order α, and lower terminal.
///
/// The base must equal the grid origin of any sampled function the operator
/// is applied to; there is no way to start the memory sum inside the grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorSpec {
    pub kind: OperatorKind,
    pub order: FractionalOrder,
    pub base: f64,
}

impl OperatorSpec {
    pub fn new(kind: OperatorKind, order: FractionalOrder, base: f64) -> Self {
        Self { kind, order, base }
    }

    pub fn alpha(&self) -> f64 {
        self.order.value()
    }
}

/// Apply a grid operator to a sampled function.
///
/// For the Riemann–Liouville form,
/// `output[i] = h^(−α) · Σ_{k=0..i} w_k · f(x_i − k·h)`,
/// with each sum accumulated by compensated summation in ascending k. The
/// Jumarie-shifted form runs the same convolution on `f − f(a)`. The output
/// lives on the input grid; `output[0]` is the single-term k = 0 sum.
///
/// The convolution may be split across threads (capped by
/// `FRACRULE_THREADS`), but every output value is produced by the same
/// ordered term sequence as the serial code, so results are bitwise
/// reproducible at any thread count.
pub fn frac_derivative(
    f: &SampledFunction,
    spec: &OperatorSpec,
) -> Result<SampledFunction, OperatorError> {
    if spec.kind == OperatorKind::LocalQuotient {
        return Err(OperatorError::LocalQuotientOnGrid);
    }
    let grid = f.grid();
    if spec.base != grid.a() {
        return Err(OperatorError::BaseMismatch {
            base: spec.base,
            grid_a: grid.a(),
        });
    }
    let values: std::borrow::Cow<'_, [f64]> = match spec.kind {
        OperatorKind::RiemannLiouvilleGl => f.values().into(),
        OperatorKind::JumarieShiftedGl => {
            let f_a = f.value(0);
            f.values().iter().map(|v| v - f_a).collect::<Vec<_>>().into()
        }
        OperatorKind::LocalQuotient => unreachable!(),
    };
    let out = convolve(&values, grid.h(), spec.order);
    let label = format!("D^{}[{}]", spec.alpha(), f.label());
    Ok(SampledFunction::new(grid, out, label)?)
}

fn convolve(values: &[f64], h: f64, order: FractionalOrder) -> Vec<f64> {
    let n = values.len();
    let weights = gl_weights(order, n);
    let scale = h.powf(-order.value());

    let conv_at = |i: usize| -> f64 {
        let mut acc = CompensatedSum::new();
        for k in 0..=i {
            acc.add(weights[k] * values[i - k]);
        }
        scale * acc.value()
    };

    let threads = thread_budget().min(n).max(1);
    if threads == 1 || n < 512 {
        return (0..n).map(conv_at).collect();
    }

    let mut out = vec![0.0; n];
    let chunk = n.div_ceil(threads);
    std::thread::scope(|scope| {
        for (c, slot) in out.chunks_mut(chunk).enumerate() {
            let conv_at = &conv_at;
            scope.spawn(move || {
                let start = c * chunk;
                for (j, o) in slot.iter_mut().enumerate() {
                    *o = conv_at(start + j);
                }
            });
        }
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::{gamma, Grid};

    fn order(alpha: f64) -> FractionalOrder {
        FractionalOrder::new(alpha).unwrap()
    }

    fn rl(alpha: f64, base: f64) -> OperatorSpec {
        OperatorSpec::new(OperatorKind::RiemannLiouvilleGl, order(alpha), base)
    }

    fn jumarie(alpha: f64, base: f64) -> OperatorSpec {
        OperatorSpec::new(OperatorKind::JumarieShiftedGl, order(alpha), base)
    }

    /// Closed-form power rule: D^α x^p = Γ(p+1)/Γ(p+1−α) · x^(p−α), base 0.
    fn power_rule(p: f64, alpha: f64, x: f64) -> f64 {
        let c = gamma(p + 1.0).unwrap() / gamma(p + 1.0 - alpha).unwrap();
        c * x.powf(p - alpha)
    }

    #[test]
    fn base_mismatch_is_rejected() {
        let g = Grid::new(1.0, 0.1, 16).unwrap();
        let f = SampledFunction::sample(|x| x, g, "x").unwrap();
        assert!(matches!(
            frac_derivative(&f, &rl(0.5, 0.0)),
            Err(OperatorError::BaseMismatch { .. })
        ));
    }

    #[test]
    fn local_quotient_is_not_a_grid_operator() {
        let g = Grid::new(0.0, 0.1, 16).unwrap();
        let f = SampledFunction::sample(|x| x, g, "x").unwrap();
        let spec = OperatorSpec::new(OperatorKind::LocalQuotient, order(0.5), 0.0);
        assert!(matches!(
            frac_derivative(&f, &spec),
            Err(OperatorError::LocalQuotientOnGrid)
        ));
    }

    #[test]
    fn half_derivative_of_identity_converges_to_power_rule() {
        // D^0.5 x = x^0.5 / Γ(1.5); at x = 1 the limit is
        // 1/Γ(1.5) = 2/√π = 1.1283791670955126.
        let n = 4001;
        let g = Grid::new(0.0, 1.0 / (n - 1) as f64, n).unwrap();
        let f = SampledFunction::sample(|x| x, g, "x").unwrap();
        let d = frac_derivative(&f, &rl(0.5, 0.0)).unwrap();
        let at_one = d.value(n - 1);
        assert!(
            (at_one - std::f64::consts::FRAC_2_SQRT_PI).abs() < 2e-4,
            "D^0.5 x at 1 = {at_one}"
        );
        for i in (n / 4..n).step_by(500) {
            let x = g.point(i);
            assert!((d.value(i) - power_rule(1.0, 0.5, x)).abs() < 2e-4);
        }
    }

    #[test]
    fn rl_of_constant_is_nonzero_jumarie_annihilates() {
        let n = 2001;
        let g = Grid::new(0.0, 1.0 / (n - 1) as f64, n).unwrap();
        let ones = SampledFunction::sample(|_| 1.0, g, "1").unwrap();

        let d_rl = frac_derivative(&ones, &rl(0.5, 0.0)).unwrap();
        for i in (n / 4..n).step_by(250) {
            let x = g.point(i);
            let exact = power_rule(0.0, 0.5, x); // x^−0.5 / Γ(0.5)
            assert!(
                ((d_rl.value(i) - exact) / exact).abs() < 1e-3,
                "RL of 1 at x = {x}"
            );
        }

        for &alpha in &[0.3, 0.5, 0.7, 1.0] {
            let d_j = frac_derivative(&ones, &jumarie(alpha, 0.0)).unwrap();
            assert!(
                d_j.values().iter().all(|v| v.to_bits() == 0.0f64.to_bits()),
                "Jumarie of a constant must be bitwise zero at alpha = {alpha}"
            );
        }
    }

    #[test]
    fn alpha_one_reduces_to_backward_difference() {
        let n = 1001;
        let h = 1.0 / (n - 1) as f64;
        let g = Grid::new(0.0, h, n).unwrap();
        let f = SampledFunction::sample(f64::sin, g, "sin").unwrap();
        let d = frac_derivative(&f, &rl(1.0, 0.0)).unwrap();
        for i in (50..n).step_by(100) {
            let x = g.point(i);
            assert!(
                (d.value(i) - x.cos()).abs() < h,
                "first-order accuracy at x = {x}"
            );
        }
    }

    #[test]
    fn jumarie_matches_caputo_closed_form_on_c1_input() {
        // For f(x) = (x+1)^2 = x^2 + 2x + 1 the Caputo derivative of order
        // 1/2 with base 0 drops the constant:
        //   Γ(3)/Γ(2.5)·x^1.5 + 2·Γ(2)/Γ(1.5)·x^0.5.
        let n = 4001;
        let g = Grid::new(0.0, 1.0 / (n - 1) as f64, n).unwrap();
        let f = SampledFunction::sample(|x| (x + 1.0) * (x + 1.0), g, "(x+1)^2").unwrap();
        let d = frac_derivative(&f, &jumarie(0.5, 0.0)).unwrap();
        for i in (n / 4..n).step_by(500) {
            let x = g.point(i);
            let caputo = power_rule(2.0, 0.5, x) + 2.0 * power_rule(1.0, 0.5, x);
            assert!(
                ((d.value(i) - caputo) / caputo).abs() < 1e-3,
                "Jumarie/Caputo mismatch at x = {x}: {} vs {caputo}",
                d.value(i)
            );
        }
    }

    #[test]
    fn output_zero_is_single_term() {
        let g = Grid::new(0.5, 0.25, 8).unwrap();
        let f = SampledFunction::sample(|x| x * x, g, "x^2").unwrap();
        let d = frac_derivative(&f, &rl(0.5, 0.5)).unwrap();
        let expected = 0.25f64.powf(-0.5) * f.value(0);
        assert_eq!(d.value(0).to_bits(), expected.to_bits());
    }

    #[test]
    fn parallel_convolution_is_bitwise_stable() {
        // Compare n just below and above the parallel threshold on the same
        // prefix: the first 500 outputs only depend on the first 500 inputs.
        let n = 600;
        let g = Grid::new(0.0, 1e-3, n).unwrap();
        let f = SampledFunction::sample(|x| (7.0 * x).sin() + x, g, "mix").unwrap();
        let full = frac_derivative(&f, &rl(0.7, 0.0)).unwrap();

        let g_small = Grid::new(0.0, 1e-3, 500).unwrap();
        let f_small = SampledFunction::sample(|x| (7.0 * x).sin() + x, g_small, "mix").unwrap();
        let small = frac_derivative(&f_small, &rl(0.7, 0.0)).unwrap();

        for i in 0..500 {
            assert_eq!(full.value(i).to_bits(), small.value(i).to_bits(), "index {i}");
        }
    }
}
