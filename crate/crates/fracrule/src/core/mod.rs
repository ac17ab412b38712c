//! Domain types, uniform grids, the gamma function, and deterministic
//! summation shared by every other module.
//!
//! Everything here is immutable after construction and every operation is a
//! pure function, so all types are safe to share across threads.

mod gamma;
mod grid;
mod sum;

pub use gamma::gamma;
pub use grid::{Grid, SampledFunction};
pub use sum::{deterministic_sum, CompensatedSum};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoreError {
    #[error("gamma is defined only for positive arguments here, got x = {x}")]
    GammaDomain { x: f64 },
    #[error("invalid grid: {reason}")]
    InvalidGrid { reason: String },
    #[error("function value at grid index {index} (x = {x}) is not finite")]
    NonFiniteSample { index: usize, x: f64 },
    #[error("fractional order must satisfy 0 < alpha <= 1, got {alpha}")]
    InvalidOrder { alpha: f64 },
    #[error("invalid Weierstrass parameters: {reason}")]
    InvalidWeierstrass { reason: String },
}

/// Fractional differentiation order α with 0 < α ≤ 1.
///
/// α = 1 is admitted as the classical reduction: every operator in this
/// crate collapses to an ordinary backward difference there, which is what
/// the integer-order oracle tests lean on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FractionalOrder(f64);

impl FractionalOrder {
    pub fn new(alpha: f64) -> Result<Self, CoreError> {
        if !(alpha.is_finite() && alpha > 0.0 && alpha <= 1.0) {
            return Err(CoreError::InvalidOrder { alpha });
        }
        Ok(Self(alpha))
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.0
    }
}

/// Parameters of the truncated Weierstrass cosine series
/// W(x) = Σ_{n=0}^{n_terms−1} b^(−nα) cos(bⁿ x).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeierstrassParams {
    alpha: f64,
    b: f64,
    n_terms: usize,
}

impl WeierstrassParams {
    pub fn new(alpha: f64, b: f64, n_terms: usize) -> Result<Self, CoreError> {
        if !(alpha.is_finite() && alpha > 0.0 && alpha < 1.0) {
            return Err(CoreError::InvalidWeierstrass {
                reason: format!("exponent must lie in (0, 1), got {alpha}"),
            });
        }
        if !(b.is_finite() && b > 1.0) {
            return Err(CoreError::InvalidWeierstrass {
                reason: format!("frequency base must exceed 1, got {b}"),
            });
        }
        if n_terms == 0 {
            return Err(CoreError::InvalidWeierstrass {
                reason: "need at least one series term".to_owned(),
            });
        }
        Ok(Self { alpha, b, n_terms })
    }

    /// Smallest truncation whose geometric tail bound is below `tol`
    /// (default tolerance 1e-14 when `None`).
    pub fn for_tail_tolerance(alpha: f64, b: f64, tol: Option<f64>) -> Result<Self, CoreError> {
        let tol = tol.unwrap_or(1e-14);
        if !(tol.is_finite() && tol > 0.0) {
            return Err(CoreError::InvalidWeierstrass {
                reason: format!("tail tolerance must be positive, got {tol}"),
            });
        }
        let probe = Self::new(alpha, b, 1)?;
        let ratio = probe.term_ratio();
        // tail(n) = b^(−nα) / (1 − b^(−α)) = ratio^n / (1 − ratio)
        let n = ((tol * (1.0 - ratio)).ln() / ratio.ln()).ceil().max(1.0);
        Self::new(alpha, b, n as usize)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn n_terms(&self) -> usize {
        self.n_terms
    }

    fn term_ratio(&self) -> f64 {
        self.b.powf(-self.alpha)
    }

    /// Geometric bound on the truncation error: b^(−n_terms·α) / (1 − b^(−α)).
    pub fn tail_bound(&self) -> f64 {
        let r = self.term_ratio();
        r.powi(self.n_terms as i32) / (1.0 - r)
    }
}

/// Number of worker threads library operations may use.
///
/// `FRACRULE_THREADS` caps the available core count; unset or unparsable
/// values fall back to the machine's parallelism. Results never depend on
/// this number: parallel sections split work so every output value is still
/// produced by the same sequential compensated sum as the serial code.
pub fn thread_budget() -> usize {
    let available = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1);
    match std::env::var("FRACRULE_THREADS") {
        Ok(raw) => match raw.trim().parse::<usize>() {
            Ok(t) if t >= 1 => t.min(available),
            _ => available,
        },
        Err(_) => available,
    }
}
