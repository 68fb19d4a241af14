//! Reference densities: Barenblatt profiles (with their closed-form
//! functionals), Gaussians, uniform balls, and two-shell stress profiles.
//!
//! All generators return unit-mass fields (renormalized against the grid
//! quadrature) and enforce the tail truncation budget from `density`.

use crate::density::{DensityField, EPS_MASS};
use crate::error::{Error, Result};
use crate::grid::RadialGrid;
use crate::special::ln_gamma;

const PI: f64 = std::f64::consts::PI;

/// Parameters of the source-type profile M̃(x) = (C - λ|x|²)_+^{1/(p-1)}:
/// μ = 2 + n(p-1), λ = (1/(2μ))·(p-1)/p, and C normalizing to unit mass.
/// λ < 0 for p < 1, in which case the profile is strictly positive with an
/// algebraic tail of exponent -2/(1-p).
#[derive(Debug, Clone, PartialEq)]
pub struct BarenblattSpec {
    n: usize,
    p: f64,
    mu: f64,
    lam: f64,
    c: f64,
}

impl BarenblattSpec {
    /// Build the profile parameters for dimension n and order p, fixing C by
    /// bisection on the closed-form mass map (tolerance 1e-12 on mass).
    pub fn new(n: usize, p: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ParameterRange("dimension must be >= 1".into()));
        }
        let nf = n as f64;
        if !(p > 0.0) || !p.is_finite() {
            return Err(Error::ParameterRange(format!("order p must be positive, got {p}")));
        }
        if p <= (nf - 2.0) / nf {
            return Err(Error::ParameterRange(format!(
                "p = {p} is outside the existence range p > (n-2)/n = {}",
                (nf - 2.0) / nf
            )));
        }
        if p == 1.0 {
            return Err(Error::ParameterRange(
                "p = 1 has no Barenblatt profile (the limit object is the Gaussian)".into(),
            ));
        }
        let mu = 2.0 + nf * (p - 1.0);
        let lam = (p - 1.0) / (2.0 * mu * p);
        let c = bisect_mass(n, p, lam)?;
        Ok(BarenblattSpec { n, p, mu, lam, c })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> f64 {
        self.p
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn lam(&self) -> f64 {
        self.lam
    }

    pub fn normalization(&self) -> f64 {
        self.c
    }

    /// Profile value at radius r.
    pub fn value(&self, r: f64) -> f64 {
        let base = self.c - self.lam * r * r;
        if self.p > 1.0 {
            if base <= 0.0 {
                0.0
            } else {
                base.powf(1.0 / (self.p - 1.0))
            }
        } else {
            // λ < 0: base = C + |λ| r² > 0, exponent negative
            base.powf(1.0 / (self.p - 1.0))
        }
    }

    /// Support radius √(C/λ) for p > 1; None for p < 1 (full support).
    pub fn support_radius(&self) -> Option<f64> {
        (self.p > 1.0).then(|| (self.c / self.lam).sqrt())
    }

    /// C from the unit-mass condition in closed form (Gamma functions); the
    /// independent check on the bisection path.
    pub fn closed_form_c(&self) -> f64 {
        let nf = self.n as f64;
        let half_n = nf / 2.0;
        if self.p > 1.0 {
            let s = 1.0 / (self.p - 1.0);
            let ln_c = (half_n * (self.lam.ln() - PI.ln()) + ln_gamma(half_n + s + 1.0)
                - ln_gamma(s + 1.0))
                / (half_n + s);
            ln_c.exp()
        } else {
            let sig = 1.0 / (1.0 - self.p);
            let ln_c = (half_n * ((-self.lam).ln() - PI.ln()) + ln_gamma(sig)
                - ln_gamma(sig - half_n))
                / (half_n - sig);
            ln_c.exp()
        }
    }

    /// ∫ M̃^p dx in closed form. Finite only for p > n/(n+2).
    pub fn exact_power_integral(&self) -> Result<f64> {
        let nf = self.n as f64;
        if self.p <= nf / (nf + 2.0) {
            return Err(Error::ParameterRange(format!(
                "∫M̃^p diverges for p = {} <= n/(n+2) = {}",
                self.p,
                nf / (nf + 2.0)
            )));
        }
        Ok(moment_integral(self.n, self.p, self.lam, self.c, self.p))
    }

    /// Second moment E(M̃) = ∫|x|² M̃ dx = n·μ·∫M̃^p (closed form).
    pub fn exact_second_moment(&self) -> Result<f64> {
        Ok(self.n as f64 * self.mu * self.exact_power_integral()?)
    }

    /// p-Fisher information of the profile: I_p(M̃) = n/μ, exactly, for every
    /// admissible order.
    pub fn exact_fisher(&self) -> f64 {
        self.n as f64 / self.mu
    }

    /// R_p(M̃) = log(∫M̃^p)/(1-p).
    pub fn exact_renyi(&self) -> Result<f64> {
        Ok(self.exact_power_integral()?.ln() / (1.0 - self.p))
    }

    /// N_p(M̃) = (∫M̃^p)^{-μ/(n(p-1))}.
    pub fn exact_entropy_power(&self) -> Result<f64> {
        let j = self.exact_power_integral()?;
        Ok(j.powf(-self.mu / (self.n as f64 * (self.p - 1.0))))
    }

    /// Λ_p(M̃) = R_p(M̃) - (n/2) log E(M̃).
    pub fn exact_lambda(&self) -> Result<f64> {
        Ok(self.exact_renyi()? - 0.5 * self.n as f64 * self.exact_second_moment()?.ln())
    }

    /// Leading-order mass beyond radius r (algebraic tail, p < 1); zero past
    /// the support for p > 1.
    pub fn tail_mass(&self, r: f64) -> f64 {
        let nf = self.n as f64;
        if self.p > 1.0 {
            return if r >= self.support_radius().unwrap() { 0.0 } else { f64::INFINITY };
        }
        let sig = 1.0 / (1.0 - self.p);
        let omega = crate::special::surface_weight(self.n);
        omega * (-self.lam).powf(-sig) * r.powf(nf - 2.0 * sig) / (2.0 * sig - nf)
    }

    /// Leading-order second-moment tail beyond radius r (p < 1); infinite if
    /// p <= n/(n+2).
    pub fn tail_second_moment(&self, r: f64) -> f64 {
        let nf = self.n as f64;
        if self.p > 1.0 {
            return if r >= self.support_radius().unwrap() { 0.0 } else { f64::INFINITY };
        }
        let sig = 1.0 / (1.0 - self.p);
        if 2.0 * sig <= nf + 2.0 {
            return f64::INFINITY;
        }
        let omega = crate::special::surface_weight(self.n);
        omega * (-self.lam).powf(-sig) * r.powf(nf + 2.0 - 2.0 * sig) / (2.0 * sig - nf - 2.0)
    }

    /// Smallest r_max meeting the mass tail budget (p < 1), or 1.02× the
    /// support radius (p > 1).
    pub fn suggested_r_max(&self, budget: f64) -> f64 {
        let nf = self.n as f64;
        if self.p > 1.0 {
            return 1.02 * self.support_radius().unwrap();
        }
        let sig = 1.0 / (1.0 - self.p);
        let omega = crate::special::surface_weight(self.n);
        let coef = omega * (-self.lam).powf(-sig) / (2.0 * sig - nf);
        (coef / budget).powf(1.0 / (2.0 * sig - nf))
    }
}

/// ∫ (C - λ|x|²)_+^t |x|^0 dx over R^n for the profile raised to an arbitrary
/// power t (t = p gives the power integral). Closed Beta-integral form.
fn moment_integral(n: usize, p: f64, lam: f64, c: f64, t_order: f64) -> f64 {
    let nf = n as f64;
    let half_n = nf / 2.0;
    if p > 1.0 {
        // exponent t = t_order/(p-1) on a compact support
        let t = t_order / (p - 1.0);
        (half_n * (PI.ln() - lam.ln()) + (half_n + t) * c.ln() + ln_gamma(t + 1.0)
            - ln_gamma(half_n + t + 1.0))
            .exp()
    } else {
        // exponent -β = -t_order/(1-p), algebraic tail
        let beta = t_order / (1.0 - p);
        (half_n * (PI.ln() - (-lam).ln()) + (half_n - beta) * c.ln() + ln_gamma(beta - half_n)
            - ln_gamma(beta))
            .exp()
    }
}

/// Closed-form mass of the profile with normalization c.
fn mass_for_c(n: usize, p: f64, lam: f64, c: f64) -> f64 {
    moment_integral(n, p, lam, c, 1.0)
}

/// Bisection on the closed-form mass map. The map is strictly monotone in C
/// (increasing for p > 1, decreasing for p < 1), so plain bracketing doubling
/// plus bisection is unconditionally safe. Tolerance 1e-12 on the mass.
fn bisect_mass(n: usize, p: f64, lam: f64) -> Result<f64> {
    let increasing = p > 1.0;
    let mut lo = 1.0_f64;
    let mut hi = 1.0_f64;
    let below = |c: f64| {
        let m = mass_for_c(n, p, lam, c);
        if increasing { m < 1.0 } else { m > 1.0 }
    };
    let mut guard = 0;
    while !below(lo) {
        lo *= 0.5;
        guard += 1;
        if guard > 4000 {
            return Err(Error::ParameterRange("mass bracketing failed (lo)".into()));
        }
    }
    guard = 0;
    while below(hi) {
        hi *= 2.0;
        guard += 1;
        if guard > 4000 {
            return Err(Error::ParameterRange("mass bracketing failed (hi)".into()));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let m = mass_for_c(n, p, lam, mid);
        if (m - 1.0).abs() <= 1e-12 {
            return Ok(mid);
        }
        if (m < 1.0) == increasing {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn renormalized(grid: RadialGrid, vals: Vec<f64>) -> Result<DensityField> {
    let f = DensityField::new(grid, vals)?;
    let m = f.mass();
    if !(m > 0.0) {
        return Err(Error::InvalidDensity("profile has zero mass on this grid".into()));
    }
    DensityField::new(f.grid().clone(), f.values().iter().map(|v| v / m).collect())
}

/// Barenblatt profile sampled on `grid`, unit mass.
///
/// Rejects grids that cannot hold the profile: for p > 1 the support must fit
/// inside r_max; for p < 1 the (leading-order) tail mass beyond r_max must be
/// under the truncation budget. Callers that go on to use second moments at
/// p < 1 should size r_max against `tail_second_moment` as well.
pub fn barenblatt_profile(n: usize, p: f64, grid: &RadialGrid) -> Result<(BarenblattSpec, DensityField)> {
    if grid.dim() != n {
        return Err(Error::GridMismatch(format!(
            "profile dimension {n} vs grid dimension {}",
            grid.dim()
        )));
    }
    let spec = BarenblattSpec::new(n, p)?;
    if let Some(support) = spec.support_radius() {
        if support > grid.r_max() {
            return Err(Error::InvalidGrid(format!(
                "support radius {support:.6} exceeds r_max = {}",
                grid.r_max()
            )));
        }
    } else {
        let tail = spec.tail_mass(grid.r_max());
        if tail > EPS_MASS {
            return Err(Error::TailBudget(format!(
                "tail mass {tail:.3e} beyond r_max = {} exceeds {EPS_MASS:.0e}",
                grid.r_max()
            )));
        }
    }
    let vals = (0..grid.cells()).map(|i| spec.value(grid.node(i))).collect();
    let f = renormalized(grid.clone(), vals)?;
    Ok((spec, f))
}

/// The self-similar solution at time t > 0:
/// M(x, t) = t^{-n/μ} M̃(x t^{-1/μ}), sampled on `grid` with unit mass.
pub fn self_similar_snapshot(spec: &BarenblattSpec, t: f64, grid: &RadialGrid) -> Result<DensityField> {
    if !(t > 0.0) {
        return Err(Error::ParameterRange(format!("self-similar time must be positive, got {t}")));
    }
    if grid.dim() != spec.dim() {
        return Err(Error::GridMismatch("snapshot grid dimension mismatch".into()));
    }
    let shrink = t.powf(-1.0 / spec.mu());
    let amp = t.powf(-(spec.dim() as f64) / spec.mu());
    if let Some(support) = spec.support_radius() {
        if support / shrink > grid.r_max() {
            return Err(Error::InvalidGrid(format!(
                "support radius {:.6} at t = {t} exceeds r_max = {}",
                support / shrink,
                grid.r_max()
            )));
        }
    } else if spec.tail_mass(grid.r_max() * shrink) > EPS_MASS {
        return Err(Error::TailBudget(format!(
            "tail mass at t = {t} beyond r_max = {} exceeds {EPS_MASS:.0e}",
            grid.r_max()
        )));
    }
    let vals = (0..grid.cells())
        .map(|i| amp * spec.value(grid.node(i) * shrink))
        .collect();
    renormalized(grid.clone(), vals)
}

/// Centered Gaussian M_σ(x) = (2πσ)^{-n/2} exp(-|x|²/(2σ)), unit mass.
pub fn gaussian_profile(n: usize, sigma: f64, grid: &RadialGrid) -> Result<DensityField> {
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(Error::ParameterRange(format!("sigma must be positive, got {sigma}")));
    }
    if grid.dim() != n {
        return Err(Error::GridMismatch("gaussian grid dimension mismatch".into()));
    }
    let r = grid.r_max();
    let nf = n as f64;
    // leading-order tail bounds (integration by parts): both the mass and the
    // second-moment tails must respect the budget
    let norm = (2.0 * PI * sigma).powf(-nf / 2.0);
    let omega = grid.omega_n();
    let tail_mass = omega * norm * sigma * r.powf(nf - 2.0) * (-r * r / (2.0 * sigma)).exp();
    let tail_e = omega * norm * sigma * r.powf(nf) * (-r * r / (2.0 * sigma)).exp();
    if tail_mass > EPS_MASS || tail_e > EPS_MASS {
        return Err(Error::TailBudget(format!(
            "gaussian tails at r_max = {r} (mass {tail_mass:.3e}, moment {tail_e:.3e}) exceed {EPS_MASS:.0e}"
        )));
    }
    let vals = (0..grid.cells())
        .map(|i| norm * (-grid.node(i).powi(2) / (2.0 * sigma)).exp())
        .collect();
    renormalized(grid.clone(), vals)
}

/// Uniform density on the ball of the given radius, unit mass.
pub fn uniform_ball_profile(n: usize, radius: f64, grid: &RadialGrid) -> Result<DensityField> {
    if !(radius > 0.0) || radius > grid.r_max() {
        return Err(Error::ParameterRange(format!(
            "ball radius must lie in (0, r_max], got {radius}"
        )));
    }
    let nf = n as f64;
    if grid.dim() != n {
        return Err(Error::GridMismatch("ball grid dimension mismatch".into()));
    }
    let value = nf / (grid.omega_n() * radius.powf(nf));
    let vals = (0..grid.cells())
        .map(|i| if grid.node(i) <= radius { value } else { 0.0 })
        .collect();
    renormalized(grid.clone(), vals)
}

/// One radial Gaussian bump of a two-shell mixture.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Shell {
    pub center: f64,
    pub width: f64,
    pub weight: f64,
}

/// Bimodal radial stress profile: two Gaussian shells in radius,
/// grid-normalized to unit mass.
pub fn two_shell_profile(n: usize, inner: Shell, outer: Shell, grid: &RadialGrid) -> Result<DensityField> {
    for (tag, s) in [("inner", &inner), ("outer", &outer)] {
        if !(s.width > 0.0) || !(s.weight > 0.0) || s.center < 0.0 {
            return Err(Error::ParameterRange(format!(
                "{tag} shell needs center >= 0, width > 0, weight > 0"
            )));
        }
        if s.center + 8.0 * s.width > grid.r_max() {
            return Err(Error::TailBudget(format!(
                "{tag} shell at {} (width {}) does not decay before r_max = {}",
                s.center,
                s.width,
                grid.r_max()
            )));
        }
    }
    if grid.dim() != n {
        return Err(Error::GridMismatch("shell grid dimension mismatch".into()));
    }
    let bump = |s: &Shell, r: f64| s.weight * (-(r - s.center).powi(2) / (2.0 * s.width * s.width)).exp();
    let vals = (0..grid.cells())
        .map(|i| {
            let r = grid.node(i);
            bump(&inner, r) + bump(&outer, r)
        })
        .collect();
    renormalized(grid.clone(), vals)
}
