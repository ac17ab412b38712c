//! Grünwald–Letnikov binomial weights.

use crate::core::FractionalOrder;

/// The first `count` GL weights w_k = (−1)^k · C(α, k), generated by the
/// recurrence w₀ = 1, w_k = w_{k−1}·(k−1−α)/k.
///
/// For α = 1 this degenerates to {1, −1, 0, 0, …}, the classical backward
/// difference stencil.
pub fn gl_weights(order: FractionalOrder, count: usize) -> Vec<f64> {
    let alpha = order.value();
    let mut w = Vec::with_capacity(count);
    if count == 0 {
        return w;
    }
    w.push(1.0);
    for k in 1..count {
        let k_f = k as f64;
        let next = w[k - 1] * ((k_f - 1.0 - alpha) / k_f);
        w.push(next);
    }
    w
}
