//! Compensated sequential summation.
//!
//! Every convolution and norm in this crate is accumulated through
//! [`CompensatedSum`], a Kahan–Babuška (Neumaier) accumulator. The update is
//! an error-free transformation of each partial sum, so results stay accurate
//! after O(n²) accumulations and, because the reduction is strictly
//! sequential in input order, two runs over the same slice are bitwise equal
//! no matter how many threads the surrounding code uses.

/// Running compensated sum. Sequential, order-sensitive, reproducible.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    /// Add one term (Neumaier update: the rounding error of `sum + value`
    /// is recovered exactly and kept in the compensation register).
    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    /// Current value of the sum.
    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }

    pub fn sum_iter<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
        let mut acc = Self::new();
        for v in iter {
            acc.add(v);
        }
        acc.value()
    }
}

/// Compensated sequential sum of a slice, in slice order.
///
/// The empty sum is 0. The result is bitwise identical across runs and
/// thread counts for identical input order; it is *not* required to be
/// permutation-invariant.
pub fn deterministic_sum(terms: &[f64]) -> f64 {
    CompensatedSum::sum_iter(terms.iter().copied())
}
