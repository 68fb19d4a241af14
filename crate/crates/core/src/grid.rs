//! Radial grids: uniform cell-centered discretizations of [0, r_max] in R^n.

use crate::error::{Error, Result};
use crate::special::surface_weight;

/// Minimum cell count; below this the second-order quadrature claims are
/// meaningless.
pub const MIN_CELLS: usize = 16;

/// A uniform cell-centered radial grid for radially symmetric fields on R^n.
///
/// Nodes sit at cell centers r_i = (i + 1/2) h with h = r_max / cells, and
/// radial integrals use the midpoint rule with the spherical weight
/// ω_n r^{n-1}, ω_n = 2π^{n/2}/Γ(n/2).
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    n: usize,
    r_max: f64,
    cells: usize,
    h: f64,
    omega_n: f64,
}

impl RadialGrid {
    pub fn new(n: usize, r_max: f64, cells: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGrid("dimension must be >= 1".into()));
        }
        if !(r_max > 0.0) || !r_max.is_finite() {
            return Err(Error::InvalidGrid(format!("r_max must be positive, got {r_max}")));
        }
        if cells < MIN_CELLS {
            return Err(Error::InvalidGrid(format!(
                "cells = {cells} is below the minimum of {MIN_CELLS}"
            )));
        }
        Ok(RadialGrid {
            n,
            r_max,
            cells,
            h: r_max / cells as f64,
            omega_n: surface_weight(n),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn cells(&self) -> usize {
        self.cells
    }

    /// Uniform node spacing h.
    pub fn spacing(&self) -> f64 {
        self.h
    }

    /// Surface measure ω_n of the unit sphere.
    pub fn omega_n(&self) -> f64 {
        self.omega_n
    }

    /// Cell-center radius r_i = (i + 1/2) h.
    pub fn node(&self, i: usize) -> f64 {
        (i as f64 + 0.5) * self.h
    }

    /// Midpoint quadrature weight for cell i: ω_n r_i^{n-1} h.
    pub fn weight(&self, i: usize) -> f64 {
        self.omega_n * self.node(i).powi(self.n as i32 - 1) * self.h
    }

    /// ∫ g(r) dμ_n over the ball, midpoint rule: ω_n Σ g(r_i) r_i^{n-1} h.
    pub fn integrate(&self, g: impl Fn(usize, f64) -> f64) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.cells {
            let r = self.node(i);
            acc += g(i, r) * r.powi(self.n as i32 - 1);
        }
        acc * self.omega_n * self.h
    }
}
