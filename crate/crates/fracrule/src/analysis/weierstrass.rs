//! Truncated Weierstrass cosine series.

use crate::core::{CompensatedSum, WeierstrassParams};

/// Evaluate W(x) = Σ_{n=0}^{n_terms−1} b^(−nα) cos(bⁿ x).
///
/// Terms are accumulated largest-first (n ascending) with compensated
/// summation, so two evaluations at the same x are bitwise identical. The
/// truncation error is bounded by the geometric tail
/// b^(−n_terms·α)/(1 − b^(−α)), available as
/// [`WeierstrassParams::tail_bound`].
///
/// ```
/// use fracrule::{weierstrass, WeierstrassParams};
///
/// // At x = 0 the series is geometric: Σ b^(−nα) → 1/(1 − b^(−α)) = 2.
/// let p = WeierstrassParams::new(0.5, 4.0, 60).unwrap();
/// assert!((weierstrass(&p, 0.0) - 2.0).abs() < 1e-12);
/// ```
pub fn weierstrass(params: &WeierstrassParams, x: f64) -> f64 {
    let ratio = params.b().powf(-params.alpha());
    let mut amplitude = 1.0;
    let mut frequency = 1.0;
    let mut acc = CompensatedSum::new();
    for _ in 0..params.n_terms() {
        acc.add(amplitude * (frequency * x).cos());
        amplitude *= ratio;
        frequency *= params.b();
    }
    acc.value()
}
