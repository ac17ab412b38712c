//! Numerical toolkit for the algebra of fractional derivatives.
//!
//! Fractional derivatives of order 0 < α < 1 famously break the Leibniz
//! product rule, and the algebraic identities that replace it — a derived
//! chain rule, the scale property, a modified chain rule for rough
//! functions — hold or fail in ways that are hard to see on paper. This
//! crate makes those identities measurable:
//!
//! * [`operators`] discretizes Riemann–Liouville and Jumarie-shifted
//!   (Caputo-compatible) derivatives through the Grünwald–Letnikov
//!   convolution, plus a local limit-quotient estimator;
//! * [`analysis`] generates coarse-grained (Weierstrass) test functions,
//!   estimates Hölder exponents from oscillation scaling, and tabulates the
//!   exact second-order Hadamard decomposition;
//! * [`rules`] measures each identity as a pointwise residual and
//!   classifies it under grid refinement as a vanishing discretization
//!   artifact or a persistent defect;
//! * [`cli`] exposes every experiment as a reproducible command with JSON,
//!   CSV, and SVG reports.
//!
//! All computations route floating-point accumulation through compensated
//! sequential summation, so identical inputs give bitwise-identical outputs
//! across runs and thread counts.

pub mod analysis;
pub mod cli;
pub mod core;
pub mod operators;
pub mod rules;

pub use crate::core::{
    deterministic_sum, gamma, CompensatedSum, CoreError, FractionalOrder, Grid, SampledFunction,
    WeierstrassParams,
};
pub use analysis::{
    hadamard_decompose, hadamard_g2, holder_condition_check, holder_estimate,
    product_holder_check, weierstrass, AnalysisError, HadamardDecomposition, HolderCheck,
    HolderEstimate, ProductHolderCheck,
};
pub use operators::{
    frac_derivative, gl_weights, local_frac_derivative, LocalQuotientEstimate, OperatorError,
    OperatorKind, OperatorSpec,
};
pub use rules::{
    conforming_grid, convergence_study, leibniz_defect, modified_chain_residual,
    remainder_vanishing_check, scale_property_residual, theorem_chain_residual,
    ConvergenceReport, ConvergenceStudy, RuleError, RuleReport, Verdict, VerdictConfig,
};

// The guide chapters under book/src double as doc-tests: every Rust snippet
// in the book is compiled and run by `cargo test --doc`, which keeps prose
// and library in lockstep.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/grids-and-sums.md")]
    mod grids_and_sums {}
    #[doc = include_str!("../../../book/src/operators.md")]
    mod operators {}
    #[doc = include_str!("../../../book/src/regularity.md")]
    mod regularity {}
    #[doc = include_str!("../../../book/src/hadamard.md")]
    mod hadamard {}
    #[doc = include_str!("../../../book/src/rules.md")]
    mod rules {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
