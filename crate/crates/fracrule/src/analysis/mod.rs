//! Coarse-grained test functions, Hölder regularity, and the Hadamard
//! second-order decomposition.

mod hadamard;
mod holder;
pub mod quadrature;
mod weierstrass;

pub use hadamard::{hadamard_decompose, hadamard_g2, HadamardDecomposition};
pub use holder::{
    holder_condition_check, holder_estimate, product_holder_check, HolderCheck, HolderEstimate,
    ProductHolderCheck,
};
pub use weierstrass::weierstrass;

pub(crate) use holder::least_squares_line;

use crate::core::CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("grid of {n} points cannot support {num_scales} dyadic scales (need n >= 2^num_scales)")]
    InsufficientGrid { n: usize, num_scales: u32 },
    #[error("need at least 4 dyadic scales, got {0}")]
    TooFewScales(u32),
    #[error("all oscillations are zero: the Holder exponent of a constant function is undefined")]
    FlatFunction,
    #[error("fewer than {needed} scales carry a nonzero oscillation")]
    DegenerateOscillations { needed: usize },
    #[error("{0}")]
    BadParameter(String),
    #[error("quadrature needs at least 2 nodes, got {0}")]
    TooFewNodes(usize),
    #[error("quadrature integrand is not finite at s = {s}")]
    NonFiniteIntegrand { s: f64 },
    #[error("t0 = {t0} lies outside the grid range [{lo}, {hi}]")]
    T0OutOfRange { t0: f64, lo: f64, hi: f64 },
    #[error(transparent)]
    Core(#[from] CoreError),
}
