//! Uniform grids and functions tabulated on them.

use super::CoreError;

/// A uniform grid of `n` points covering `[a, a + (n−1)h]`.
///
/// The left endpoint doubles as the lower terminal (base point) of every
/// fractional operator applied to functions sampled on the grid. Only
/// uniform grids exist in this crate: the Grünwald–Letnikov convolution is
/// defined on a constant step, and every refinement study refines uniformly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    a: f64,
    h: f64,
    n: usize,
}

impl Grid {
    /// Build a grid from left endpoint, step, and sample count.
    ///
    /// ```
    /// use fracrule::Grid;
    ///
    /// let g = Grid::new(0.0, 0.5, 3).unwrap();
    /// assert_eq!(g.point(2), 1.0);
    /// assert!(Grid::new(0.0, -0.1, 3).is_err());
    /// ```
    pub fn new(a: f64, h: f64, n: usize) -> Result<Self, CoreError> {
        if !a.is_finite() {
            return Err(CoreError::InvalidGrid {
                reason: format!("left endpoint must be finite, got {a}"),
            });
        }
        if !(h.is_finite() && h > 0.0) {
            return Err(CoreError::InvalidGrid {
                reason: format!("step must be positive and finite, got {h}"),
            });
        }
        if n < 2 {
            return Err(CoreError::InvalidGrid {
                reason: format!("need at least 2 samples, got {n}"),
            });
        }
        Ok(Self { a, h, n })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The i-th grid point, computed as `a + i·h` (exactly this expression,
    /// so the value is reproducible from `(a, h, i)` alone).
    #[inline]
    pub fn point(&self, i: usize) -> f64 {
        self.a + i as f64 * self.h
    }

    pub fn end(&self) -> f64 {
        self.point(self.n - 1)
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |i| self.point(i))
    }

    /// Index of the grid point equal to `x`, if `x` lies on the grid
    /// (within 1e-6·h of a node).
    pub fn index_of(&self, x: f64) -> Option<usize> {
        let t = (x - self.a) / self.h;
        if !t.is_finite() || t < -0.5 {
            return None;
        }
        let i = t.round();
        if i < 0.0 || i as usize >= self.n {
            return None;
        }
        let i = i as usize;
        if (x - self.point(i)).abs() <= 1e-6 * self.h {
            Some(i)
        } else {
            None
        }
    }
}

/// A real-valued function tabulated on a uniform grid.
///
/// This is the universal currency of the crate: operators map sampled
/// functions to sampled functions on the same grid. Values are validated to
/// be finite at construction and the type is immutable afterwards.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    grid: Grid,
    values: Vec<f64>,
    label: String,
}

impl SampledFunction {
    pub fn new(grid: Grid, values: Vec<f64>, label: impl Into<String>) -> Result<Self, CoreError> {
        if values.len() != grid.len() {
            return Err(CoreError::InvalidGrid {
                reason: format!(
                    "value count {} does not match grid length {}",
                    values.len(),
                    grid.len()
                ),
            });
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(CoreError::NonFiniteSample {
                index,
                x: grid.point(index),
            });
        }
        Ok(Self {
            grid,
            values,
            label: label.into(),
        })
    }

    /// Tabulate `f` on `grid`. Fails with the offending grid index if the
    /// function evaluates to a non-finite value anywhere.
    ///
    /// ```
    /// use fracrule::{Grid, SampledFunction};
    ///
    /// let grid = Grid::new(0.0, 0.5, 3).unwrap();
    /// let sq = SampledFunction::sample(|x| x * x, grid, "x^2").unwrap();
    /// assert_eq!(sq.values(), &[0.0, 0.25, 1.0]);
    /// ```
    pub fn sample(
        f: impl Fn(f64) -> f64,
        grid: Grid,
        label: impl Into<String>,
    ) -> Result<Self, CoreError> {
        let mut values = Vec::with_capacity(grid.len());
        for i in 0..grid.len() {
            let x = grid.point(i);
            let v = f(x);
            if !v.is_finite() {
                return Err(CoreError::NonFiniteSample { index: i, x });
            }
            values.push(v);
        }
        Ok(Self {
            grid,
            values,
            label: label.into(),
        })
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, i: usize) -> f64 {
        self.values[i]
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Pointwise product on a shared grid.
    pub fn pointwise_mul(&self, other: &Self) -> Result<Self, CoreError> {
        if self.grid != other.grid {
            return Err(CoreError::InvalidGrid {
                reason: "pointwise product requires a shared grid".to_owned(),
            });
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .collect();
        Self::new(
            self.grid,
            values,
            format!("{}*{}", self.label, other.label),
        )
    }
}
