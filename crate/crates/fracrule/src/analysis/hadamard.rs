//! Exact second-order (Hadamard) decomposition of a C² function.
//!
//! For f ∈ C² and a base point t₀,
//!
//! ```text
//! f(t) = f(t₀) + f′(t₀)(t − t₀) + g₂(t)(t − t₀)²,
//! g₂(t) = ∫₀¹ (1 − s) f″(t₀ + s(t − t₀)) ds,
//! ```
//!
//! with g₂(t₀) = f″(t₀)/2. The integrand is smooth in s whenever f″ is
//! continuous on the segment, so a fixed-order Gauss–Legendre rule
//! evaluates g₂ to near machine precision regardless of how rough any
//! outer composition is.

use crate::core::{CompensatedSum, Grid, SampledFunction};

use super::quadrature::gauss_legendre;
use super::AnalysisError;

/// A tabulated Hadamard decomposition around `t0`.
#[derive(Debug, Clone)]
pub struct HadamardDecomposition {
    pub t0: f64,
    pub f_t0: f64,
    pub fprime_t0: f64,
    /// g₂ evaluated on the grid.
    pub g2_values: SampledFunction,
}

impl HadamardDecomposition {
    /// Largest deviation of `f(t)` from the reconstructed
    /// `f(t₀) + f′(t₀)(t − t₀) + g₂(t)(t − t₀)²` over the grid.
    pub fn max_reconstruction_residual(&self, f: impl Fn(f64) -> f64) -> f64 {
        let grid = self.g2_values.grid();
        let mut worst = 0.0f64;
        for i in 0..grid.len() {
            let t = grid.point(i);
            let dt = t - self.t0;
            let rebuilt = self.f_t0 + self.fprime_t0 * dt + self.g2_values.value(i) * dt * dt;
            worst = worst.max((f(t) - rebuilt).abs());
        }
        worst
    }
}

/// The integral remainder g₂(t) by `quad_points`-node Gauss–Legendre
/// quadrature over s ∈ [0, 1].
///
/// At t = t₀ the integrand collapses to (1 − s)·f″(t₀) and the rule returns
/// f″(t₀)/2 up to rounding.
pub fn hadamard_g2(
    fpp: impl Fn(f64) -> f64,
    t0: f64,
    t: f64,
    quad_points: usize,
) -> Result<f64, AnalysisError> {
    if quad_points < 2 {
        return Err(AnalysisError::TooFewNodes(quad_points));
    }
    let (nodes, weights) = gauss_legendre(quad_points);
    let dt = t - t0;
    let mut acc = CompensatedSum::new();
    for (x, w) in nodes.iter().zip(&weights) {
        // Map [−1, 1] to [0, 1].
        let s = 0.5 * (x + 1.0);
        let value = fpp(t0 + s * dt);
        if !value.is_finite() {
            return Err(AnalysisError::NonFiniteIntegrand { s });
        }
        acc.add(0.5 * w * (1.0 - s) * value);
    }
    Ok(acc.value())
}

/// Tabulate the full decomposition of `f` around `t0` on `grid`.
///
/// `t0` must lie inside the grid range (it need not be a grid point).
pub fn hadamard_decompose(
    f: impl Fn(f64) -> f64,
    fprime: impl Fn(f64) -> f64,
    fpp: impl Fn(f64) -> f64,
    t0: f64,
    grid: Grid,
    quad_points: usize,
) -> Result<HadamardDecomposition, AnalysisError> {
    if !(t0 >= grid.a() && t0 <= grid.end()) {
        return Err(AnalysisError::T0OutOfRange {
            t0,
            lo: grid.a(),
            hi: grid.end(),
        });
    }
    let mut g2 = Vec::with_capacity(grid.len());
    for i in 0..grid.len() {
        g2.push(hadamard_g2(&fpp, t0, grid.point(i), quad_points)?);
    }
    Ok(HadamardDecomposition {
        t0,
        f_t0: f(t0),
        fprime_t0: fprime(t0),
        g2_values: SampledFunction::new(grid, g2, "g2")?,
    })
}
