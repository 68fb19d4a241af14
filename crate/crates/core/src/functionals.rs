//! The information functionals: Rényi and Tsallis entropies, entropy power,
//! p-Fisher information, and the dilation-invariant Λ_p.
//!
//! Orders within `DELTA_LIMIT` of 1 take the Shannon branch everywhere — the
//! (1-p)⁻¹ forms lose all precision in that band. Natural logarithms
//! throughout; entropies are in nats.

use crate::density::DensityField;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Orders with |p - 1| <= DELTA_LIMIT use the p → 1 (Shannon) limit branch.
pub const DELTA_LIMIT: f64 = 1e-6;

/// Density floor masking the Fisher integrand: cells with f <= EPS_POS are
/// skipped. For p > 1 the integrand vanishes at the free boundary anyway; for
/// slow algebraic tails (small p < 1) the mask truncates a genuine tail
/// contribution — see `fisher_information`.
pub const EPS_POS: f64 = 1e-12;

fn check_order(p: f64) -> Result<()> {
    if !(p > 0.0) || !p.is_finite() {
        return Err(Error::ParameterRange(format!("order p must be positive, got {p}")));
    }
    Ok(())
}

/// R_p(f) = log(∫f^p)/(1-p); Shannon branch -∫_{f>0} f log f for p ≈ 1.
pub fn renyi_entropy(f: &DensityField, p: f64) -> Result<f64> {
    check_order(p)?;
    if (p - 1.0).abs() <= DELTA_LIMIT {
        let vals = f.values();
        return Ok(f.grid().integrate(|i, _| {
            let v = vals[i];
            if v > 0.0 {
                -v * v.ln()
            } else {
                0.0
            }
        }));
    }
    Ok(f.integrate_power(p)?.ln() / (1.0 - p))
}

/// T_p(f) = (∫f^p - ∫f)/(1-p); Shannon branch for p ≈ 1. Unlike R_p this is
/// not additive under dilation.
pub fn tsallis_entropy(f: &DensityField, p: f64) -> Result<f64> {
    check_order(p)?;
    if (p - 1.0).abs() <= DELTA_LIMIT {
        return renyi_entropy(f, 1.0);
    }
    Ok((f.integrate_power(p)? - f.mass()) / (1.0 - p))
}

/// N_p(f) = exp{(2/n + p - 1)·R_p(f)}; defined for p > (n-2)/n where the
/// exponent is positive.
pub fn entropy_power(f: &DensityField, p: f64) -> Result<f64> {
    check_order(p)?;
    let nf = f.grid().dim() as f64;
    if !(p > (nf - 2.0) / nf) {
        return Err(Error::ParameterRange(format!(
            "entropy power needs p > (n-2)/n = {}, got {p}",
            (nf - 2.0) / nf
        )));
    }
    Ok(((2.0 / nf + p - 1.0) * renyi_entropy(f, p)?).exp())
}

/// Radial derivative by second-order central differences, with one-sided
/// second-order stencils at both ends.
pub(crate) fn radial_gradient(w: &[f64], h: f64) -> Vec<f64> {
    let m = w.len();
    let mut g = vec![0.0; m];
    g[0] = (-3.0 * w[0] + 4.0 * w[1] - w[2]) / (2.0 * h);
    for i in 1..m - 1 {
        g[i] = (w[i + 1] - w[i - 1]) / (2.0 * h);
    }
    g[m - 1] = (3.0 * w[m - 1] - 4.0 * w[m - 2] + w[m - 3]) / (2.0 * h);
    g
}

/// p-Fisher information I_p(f) = (∫f^p)⁻¹·∫_{f>ε} |∂_r f^p|²/f dμ_n, with the
/// Shannon form ∫_{f>ε} |∂_r f|²/f (denominator 1) for p ≈ 1.
///
/// The ε = `EPS_POS` mask makes the free-boundary cells of compactly
/// supported profiles harmless (O(h) error there). For strictly positive
/// profiles with slow algebraic tails (fast diffusion well below p = 1) the
/// mask cuts at the grid-independent radius where f = ε, discarding a tail
/// contribution that no grid refinement recovers; at (n,p) = (1,1/2) that
/// bias is ≈ -1.8e-3 relative, at (3,2/3) ≈ -4.6e-2.
pub fn fisher_information(f: &DensityField, p: f64) -> Result<f64> {
    check_order(p)?;
    let shannon = (p - 1.0).abs() <= DELTA_LIMIT;
    let vals = f.values();
    let h = f.grid().spacing();
    let w: Vec<f64> = if shannon {
        vals.to_vec()
    } else {
        vals.iter().map(|v| v.powf(p)).collect()
    };
    let grad = radial_gradient(&w, h);
    let integral = f.grid().integrate(|i, _| {
        let v = vals[i];
        if v > EPS_POS {
            grad[i] * grad[i] / v
        } else {
            0.0
        }
    });
    if shannon {
        Ok(integral)
    } else {
        Ok(integral / f.integrate_power(p)?)
    }
}

/// Λ_p(f) = R_p(f) - (n/2)·log E(f), the dilation invariant. Needs the
/// finite-second-moment regime p > n/(n+2).
pub fn lambda_invariant(f: &DensityField, p: f64) -> Result<f64> {
    check_order(p)?;
    let nf = f.grid().dim() as f64;
    if !(p > nf / (nf + 2.0)) {
        return Err(Error::ParameterRange(format!(
            "lambda needs p > n/(n+2) = {}, got {p}",
            nf / (nf + 2.0)
        )));
    }
    let e = f.second_moment();
    if !(e > 0.0) {
        return Err(Error::InvalidDensity("degenerate second moment".into()));
    }
    Ok(renyi_entropy(f, p)? - 0.5 * nf * e.ln())
}

/// Every functional of one density at one order, evaluated together.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FunctionalReport {
    pub p: f64,
    pub renyi: f64,
    pub power: f64,
    pub fisher: f64,
    pub lambda: f64,
    pub second_moment: f64,
    pub tsallis: f64,
}

impl FunctionalReport {
    /// Evaluate all functionals. Requires p > (n-2)/n (for the entropy
    /// power); `lambda` is the formula value R_p - (n/2)·log E on the grid —
    /// its interpretation as the dilation invariant needs p > n/(n+2).
    pub fn compute(f: &DensityField, p: f64) -> Result<Self> {
        let renyi = renyi_entropy(f, p)?;
        let power = entropy_power(f, p)?;
        let fisher = fisher_information(f, p)?;
        let second_moment = f.second_moment();
        let tsallis = tsallis_entropy(f, p)?;
        let lambda = renyi - 0.5 * f.grid().dim() as f64 * second_moment.ln();
        Ok(FunctionalReport { p, renyi, power, fisher, lambda, second_moment, tsallis })
    }
}
