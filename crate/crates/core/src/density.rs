//! Radial density fields and the elementary operations on them:
//! power integrals, moments, dilation, L¹ distances.

use crate::error::{Error, Result};
use crate::grid::RadialGrid;

/// Mass tolerance for generator outputs and the tail truncation budget.
pub const EPS_MASS: f64 = 1e-6;

/// A nonnegative radially symmetric density sampled at the cell centers of a
/// [`RadialGrid`]. Values are plain samples f(r_i); all integrals are
/// midpoint sums with the spherical weight.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityField {
    grid: RadialGrid,
    values: Vec<f64>,
}

impl DensityField {
    /// Wrap raw samples. Rejects negative or non-finite entries and length
    /// mismatches; does not renormalize.
    pub fn new(grid: RadialGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.cells() {
            return Err(Error::InvalidDensity(format!(
                "expected {} samples, got {}",
                grid.cells(),
                values.len()
            )));
        }
        for (i, &v) in values.iter().enumerate() {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidDensity(format!(
                    "value at node {i} is {v}; densities must be finite and >= 0"
                )));
            }
        }
        Ok(DensityField { grid, values })
    }

    pub fn grid(&self) -> &RadialGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// ∫ f dx.
    pub fn mass(&self) -> f64 {
        self.grid.integrate(|i, _| self.values[i])
    }

    /// ∫ f^q dx for q > 0, midpoint rule.
    pub fn integrate_power(&self, q: f64) -> Result<f64> {
        if !(q > 0.0) {
            return Err(Error::ParameterRange(format!("integrate_power needs q > 0, got {q}")));
        }
        Ok(self.grid.integrate(|i, _| self.values[i].powf(q)))
    }

    /// Second moment E(f) = ∫ |x|² f dx.
    pub fn second_moment(&self) -> f64 {
        self.grid.integrate(|i, r| r * r * self.values[i])
    }

    /// ∫ |f - g| dx on a shared grid.
    pub fn l1_distance(&self, other: &DensityField) -> Result<f64> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch(
                "l1_distance requires both fields on the same grid".into(),
            ));
        }
        Ok(self
            .grid
            .integrate(|i, _| (self.values[i] - other.values[i]).abs()))
    }

    /// Mass-preserving dilation f_a(x) = a^n f(a x), resampled on the same
    /// grid by monotone piecewise-linear interpolation of the radial profile.
    ///
    /// For a < 1 the support stretches by 1/a; the part of f beyond a·r_max
    /// would land outside the grid, so the call is rejected when that tail
    /// carries more than the truncation budget.
    pub fn dilate(&self, a: f64) -> Result<DensityField> {
        if !(a > 0.0) || !a.is_finite() {
            return Err(Error::ParameterRange(format!("dilation factor must be positive, got {a}")));
        }
        if a < 1.0 {
            let cutoff = a * self.grid.r_max();
            let tail = self
                .grid
                .integrate(|i, r| if r > cutoff { self.values[i] } else { 0.0 });
            if tail > EPS_MASS {
                return Err(Error::DilationTruncated(format!(
                    "mass {tail:.3e} of f beyond r = {cutoff:.3} exceeds the budget {EPS_MASS:.0e}"
                )));
            }
        }
        let scale = a.powi(self.grid.dim() as i32);
        let vals = (0..self.grid.cells())
            .map(|i| scale * self.sample_radial(a * self.grid.node(i)))
            .collect();
        DensityField::new(self.grid.clone(), vals)
    }

    /// Piecewise-linear read of the radial profile at arbitrary radius:
    /// constant below the first node (even extension), linear between nodes,
    /// tapering to zero between the last node and r_max, zero beyond.
    pub fn sample_radial(&self, r: f64) -> f64 {
        let h = self.grid.spacing();
        let m = self.grid.cells();
        let last = self.grid.node(m - 1);
        if r <= self.grid.node(0) {
            return self.values[0];
        }
        if r >= last {
            if r >= self.grid.r_max() {
                return 0.0;
            }
            // taper from the last sample to 0 at r_max
            let t = (self.grid.r_max() - r) / (self.grid.r_max() - last);
            return self.values[m - 1] * t;
        }
        let s = r / h - 0.5;
        let j = s.floor() as usize;
        let t = s - j as f64;
        self.values[j] * (1.0 - t) + self.values[j + 1] * t
    }
}
