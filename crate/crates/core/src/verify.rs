//! Certificate-producing checks: each one turns a claimed identity or
//! inequality into numbers — lhs, rhs, signed slack, tolerance, verdict —
//! plus enough context to reproduce it.
//!
//! Orientation convention: slack = lhs - rhs for "≥" claims and rhs - lhs
//! for "≤" claims, so pass ⇔ slack ≥ -tol·scale uniformly. Mismatch-style
//! checks put the worst relative mismatch in lhs with rhs = 0 and
//! slack = -lhs. Whenever the scale is not 1 the notes say what it was.

use crate::constants::{gamma_constant, sobolev_constant};
use crate::density::DensityField;
use crate::error::{Error, Result};
use crate::functionals::{entropy_power, radial_gradient, DELTA_LIMIT};
use crate::grid::RadialGrid;
use crate::profiles::{barenblatt_profile, gaussian_profile, self_similar_snapshot, BarenblattSpec};
use crate::solver::Trajectory;
use serde::{Deserialize, Serialize};

/// Grid summary embedded in certificate parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridParams {
    pub r_max: f64,
    pub cells: usize,
}

/// The evaluation context a certificate was produced under. Static checks
/// (no flow) leave `kappa` empty and `times` empty or set to the sampled
/// instants.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckParams {
    pub n: usize,
    pub p: f64,
    pub kappa: Option<f64>,
    pub grid: GridParams,
    pub times: Vec<f64>,
}

/// One verified claim: all scalars that went into the verdict, and the
/// verdict itself.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub check_id: String,
    pub params: CheckParams,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub tol: f64,
    pub pass: bool,
    pub notes: String,
}

/// Default tolerances, overridable per call (and per scenario in the CLI).
pub const TOL_DEBRUIJN: f64 = 2e-2;
pub const TOL_MOMENT_LAW: f64 = 2e-2;
pub const TOL_LAMBDA_MONOTONE: f64 = 1e-6;
pub const TOL_CONCAVITY: f64 = 1e-3;
pub const TOL_ISOPERIMETRIC: f64 = 1e-3;
pub const TOL_POWER_LINEARITY: f64 = 1e-3;
pub const TOL_SOBOLEV: f64 = 5e-3;
pub const TOL_ATTRACTION: f64 = 1e-3;

fn traj_params(traj: &Trajectory) -> CheckParams {
    let grid = traj.snapshots[0].field.grid();
    CheckParams {
        n: grid.dim(),
        p: traj.p,
        kappa: Some(traj.kappa),
        grid: GridParams { r_max: grid.r_max(), cells: grid.cells() },
        times: traj.times(),
    }
}

fn need_snapshots(traj: &Trajectory, k: usize, check: &str) -> Result<()> {
    if traj.snapshots.len() < k {
        return Err(Error::ParameterRange(format!(
            "{check} needs at least {k} snapshots, trajectory has {}",
            traj.snapshots.len()
        )));
    }
    Ok(())
}

fn need_moment_range(n: usize, p: f64, check: &str) -> Result<()> {
    let nf = n as f64;
    if !(p > nf / (nf + 2.0)) {
        return Err(Error::ParameterRange(format!(
            "{check} needs p > n/(n+2) = {}, got {p}",
            nf / (nf + 2.0)
        )));
    }
    Ok(())
}

/// Entropy production: dR_p/dt = κ·I_p along the flow, tested by centered
/// differences at every interior snapshot. lhs is the worst relative
/// mismatch, slack = -lhs.
pub fn check_debruijn(traj: &Trajectory, tol: Option<f64>) -> Result<Certificate> {
    need_snapshots(traj, 3, "check_debruijn")?;
    let tol = tol.unwrap_or(TOL_DEBRUIJN);
    let s = &traj.snapshots;
    let mut worst = 0.0_f64;
    let mut at = s[1].time;
    for k in 1..s.len() - 1 {
        let drdt = (s[k + 1].report.renyi - s[k - 1].report.renyi) / (s[k + 1].time - s[k - 1].time);
        let rate = traj.kappa * s[k].report.fisher;
        let mismatch = ((drdt - rate) / rate).abs();
        if mismatch > worst {
            worst = mismatch;
            at = s[k].time;
        }
    }
    Ok(Certificate {
        check_id: "debruijn".into(),
        params: traj_params(traj),
        lhs: worst,
        rhs: 0.0,
        slack: -worst,
        tol,
        pass: worst <= tol,
        notes: format!(
            "max relative mismatch between centered dR_p/dt and kappa*I_p over {} interior snapshots, worst at t = {at:.6e}",
            s.len() - 2
        ),
    })
}

/// Second-moment production: dE/dt = 2nκ·∫v^p, centered differences at
/// interior snapshots; also requires E non-decreasing across all snapshots.
pub fn check_moment_law(traj: &Trajectory, tol: Option<f64>) -> Result<Certificate> {
    need_snapshots(traj, 3, "check_moment_law")?;
    let tol = tol.unwrap_or(TOL_MOMENT_LAW);
    let s = &traj.snapshots;
    let n = s[0].field.grid().dim() as f64;
    let mut worst = 0.0_f64;
    for k in 1..s.len() - 1 {
        let dedt = (s[k + 1].report.second_moment - s[k - 1].report.second_moment)
            / (s[k + 1].time - s[k - 1].time);
        let rate = 2.0 * n * traj.kappa * s[k].field.integrate_power(traj.p)?;
        worst = worst.max(((dedt - rate) / rate).abs());
    }
    let mut min_step = f64::MAX;
    for pair in s.windows(2) {
        min_step = min_step.min(pair[1].report.second_moment - pair[0].report.second_moment);
    }
    let monotone = min_step >= -1e-12 * s[0].report.second_moment.abs();
    Ok(Certificate {
        check_id: "moment_law".into(),
        params: traj_params(traj),
        lhs: worst,
        rhs: 0.0,
        slack: -worst,
        tol,
        pass: worst <= tol && monotone,
        notes: format!(
            "max relative mismatch between centered dE/dt and 2nkappa*integral(v^p); \
             smallest forward E step {min_step:.3e} (must be non-negative to roundoff)"
        ),
    })
}

/// Λ_p never decreases along the flow. slack is the smallest forward
/// difference (absolute tolerance 1e-6); the static inequality
/// I_p ≥ n²·∫v^p/E must also hold at every snapshot to 1e-3 relative.
pub fn check_lambda_monotone(traj: &Trajectory, tol: Option<f64>) -> Result<Certificate> {
    need_snapshots(traj, 2, "check_lambda_monotone")?;
    let grid = traj.snapshots[0].field.grid();
    need_moment_range(grid.dim(), traj.p, "check_lambda_monotone")?;
    let tol = tol.unwrap_or(TOL_LAMBDA_MONOTONE);
    let s = &traj.snapshots;
    let mut min_step = f64::MAX;
    for pair in s.windows(2) {
        min_step = min_step.min(pair[1].report.lambda - pair[0].report.lambda);
    }
    let n2 = (grid.dim() as f64).powi(2);
    let mut static_margin = f64::MAX; // min of (I - n^2 J/E)/(n^2 J/E)
    for snap in s.iter() {
        let bound = n2 * snap.field.integrate_power(traj.p)? / snap.report.second_moment;
        static_margin = static_margin.min((snap.report.fisher - bound) / bound);
    }
    let static_ok = static_margin >= -1e-3;
    Ok(Certificate {
        check_id: "lambda_monotone".into(),
        params: traj_params(traj),
        lhs: min_step,
        rhs: 0.0,
        slack: min_step,
        tol,
        pass: min_step >= -tol && static_ok,
        notes: format!(
            "smallest forward Lambda_p difference over {} snapshots; \
             static I_p >= n^2*integral(v^p)/E worst relative margin {static_margin:.3e} (floor -1e-3)",
            s.len()
        ),
    })
}

/// Entropy power concavity: on uniformly spaced snapshots every undivided
/// second difference of N_p must be ≤ +tol·max|N_p|.
pub fn check_concavity(traj: &Trajectory, tol: Option<f64>) -> Result<Certificate> {
    need_snapshots(traj, 4, "check_concavity")?;
    let tol = tol.unwrap_or(TOL_CONCAVITY);
    let s = &traj.snapshots;
    let dt0 = s[1].time - s[0].time;
    for pair in s.windows(2) {
        let dt = pair[1].time - pair[0].time;
        if ((dt - dt0) / dt0).abs() > 1e-9 {
            return Err(Error::ParameterRange(format!(
                "check_concavity needs uniformly spaced snapshots; found steps {dt0:.6e} and {dt:.6e}"
            )));
        }
    }
    let powers: Vec<f64> = s.iter().map(|snap| snap.report.power).collect();
    let scale = powers.iter().fold(0.0_f64, |m, &x| m.max(x.abs()));
    let mut max_d2 = f64::MIN;
    for k in 1..powers.len() - 1 {
        max_d2 = max_d2.max(powers[k + 1] - 2.0 * powers[k] + powers[k - 1]);
    }
    Ok(Certificate {
        check_id: "concavity".into(),
        params: traj_params(traj),
        lhs: max_d2,
        rhs: 0.0,
        slack: -max_d2,
        tol,
        pass: max_d2 <= tol * scale,
        notes: format!(
            "largest undivided second difference of N_p over uniform step {dt0:.6e}; scale max|N_p| = {scale:.6e}"
        ),
    })
}

/// The sharp inequality N_p(f)·I_p(f) ≥ γ_{n,p}. slack = lhs - rhs, pass ⇔
/// slack ≥ -tol·rhs. Notes carry the dilation-invariance residual of the
/// product at a = 2 as a quadrature diagnostic.
pub fn check_isoperimetric(f: &DensityField, p: f64, tol: Option<f64>) -> Result<Certificate> {
    let grid = f.grid();
    need_moment_range(grid.dim(), p, "check_isoperimetric")?;
    let tol = tol.unwrap_or(TOL_ISOPERIMETRIC);
    let product = |field: &DensityField| -> Result<f64> {
        Ok(entropy_power(field, p)? * crate::functionals::fisher_information(field, p)?)
    };
    let lhs = product(f)?;
    let rhs = gamma_constant(grid.dim(), p)?;
    let dilation_residual = match f.dilate(2.0) {
        Ok(f2) => format!("{:.3e}", (product(&f2)? - lhs) / lhs),
        Err(_) => "unavailable (dilation would truncate)".into(),
    };
    Ok(Certificate {
        check_id: "isoperimetric".into(),
        params: CheckParams {
            n: grid.dim(),
            p,
            kappa: None,
            grid: GridParams { r_max: grid.r_max(), cells: grid.cells() },
            times: Vec::new(),
        },
        lhs,
        rhs,
        slack: lhs - rhs,
        tol,
        pass: lhs - rhs >= -tol * rhs,
        notes: format!(
            "N_p*I_p against the sharp constant; scale = rhs; \
             dilation residual of lhs at a = 2: {dilation_residual}"
        ),
    })
}

/// N_p is exactly linear in t along the self-similar solution. Samples the
/// closed-form snapshots on `grid` (no PDE solve), fits slope·t through the
/// origin by least squares, and checks both the pointwise deviation from the
/// line and the slope against N_p(M̃) to the same tolerance.
pub fn check_power_linearity(
    spec: &BarenblattSpec,
    times: &[f64],
    grid: &RadialGrid,
    tol: Option<f64>,
) -> Result<Certificate> {
    if times.len() < 4 {
        return Err(Error::ParameterRange(format!(
            "check_power_linearity needs at least 4 times, got {}",
            times.len()
        )));
    }
    let mut prev = 0.0;
    for &t in times {
        if !t.is_finite() || t <= prev {
            return Err(Error::ParameterRange(format!(
                "times must be positive and strictly increasing; offending entry {t}"
            )));
        }
        prev = t;
    }
    let tol = tol.unwrap_or(TOL_POWER_LINEARITY);
    let mut powers = Vec::with_capacity(times.len());
    for &t in times {
        let field = self_similar_snapshot(spec, t, grid)?;
        powers.push(entropy_power(&field, spec.order())?);
    }
    let (mut num, mut den) = (0.0, 0.0);
    for (&t, &np) in times.iter().zip(&powers) {
        num += t * np;
        den += t * t;
    }
    let slope = num / den;
    let mut deviation = 0.0_f64;
    for (&t, &np) in times.iter().zip(&powers) {
        deviation = deviation.max(((np - slope * t) / (slope * t)).abs());
    }
    let exact = spec.exact_entropy_power()?;
    let slope_err = ((slope - exact) / exact).abs();
    Ok(Certificate {
        check_id: "power_linearity".into(),
        params: CheckParams {
            n: spec.dim(),
            p: spec.order(),
            kappa: None,
            grid: GridParams { r_max: grid.r_max(), cells: grid.cells() },
            times: times.to_vec(),
        },
        lhs: deviation.max(slope_err),
        rhs: 0.0,
        slack: -deviation.max(slope_err).abs(),
        tol,
        pass: deviation <= tol && slope_err <= tol,
        notes: format!(
            "max relative deviation of N_p(t) from the origin-fitted line {deviation:.3e}; \
             fitted slope {slope:.10e} vs N_p of the profile, relative error {slope_err:.3e}"
        ),
    })
}

/// Sobolev inequality via the substitution g = f^{1/2*}, 2* = 2n/(n-2):
/// Rayleigh ratio ∫|∇g|² / (∫g^{2*})^{2/2*} ≥ S_n. No positivity mask is
/// involved — the integrand never divides by f.
pub fn check_sobolev(f: &DensityField, tol: Option<f64>) -> Result<Certificate> {
    let grid = f.grid();
    let n = grid.dim();
    if n <= 2 {
        return Err(Error::ParameterRange(format!(
            "the Sobolev constant needs n > 2, got n = {n}"
        )));
    }
    let tol = tol.unwrap_or(TOL_SOBOLEV);
    let two_star = 2.0 * n as f64 / (n as f64 - 2.0);
    let g: Vec<f64> = f.values().iter().map(|&v| v.powf(1.0 / two_star)).collect();
    let grad = radial_gradient(&g, grid.spacing());
    let dirichlet = grid.integrate(|i, _| grad[i] * grad[i]);
    // ∫ g^{2*} = ∫ f = mass, normalized away rather than assumed
    let denom = f.mass().powf(2.0 / two_star);
    let lhs = dirichlet / denom;
    let rhs = sobolev_constant(n)?;
    Ok(Certificate {
        check_id: "sobolev".into(),
        params: CheckParams {
            n,
            p: two_star,
            kappa: None,
            grid: GridParams { r_max: grid.r_max(), cells: grid.cells() },
            times: Vec::new(),
        },
        lhs,
        rhs,
        slack: lhs - rhs,
        tol,
        pass: lhs - rhs >= -tol * rhs,
        notes: format!(
            "Rayleigh ratio of g = f^(1/2*) with 2* = {two_star:.6}; scale = rhs; \
             p field records 2*"
        ),
    })
}

/// Convergence to the self-similar profile: at each snapshot the density is
/// dilated to match the reference second moment and compared in L¹; the
/// sequence must be non-increasing (within 1e-4), Λ_p must stay below the
/// reference Λ_p + 1e-3, and the equivalent ratio form
/// N_p/E^{1+n(p-1)/2} ≤ exp((μ/n)·Λ_ref) must hold to the same tolerance.
///
/// For p within `DELTA_LIMIT` of 1 the reference member is the unit Gaussian
/// with Λ_ref = (n/2)·log(2πe/n) in closed form.
pub fn check_barenblatt_attraction(traj: &Trajectory, tol: Option<f64>) -> Result<Certificate> {
    need_snapshots(traj, 3, "check_barenblatt_attraction")?;
    let grid = traj.snapshots[0].field.grid();
    let n = grid.dim();
    need_moment_range(n, traj.p, "check_barenblatt_attraction")?;
    let tol = tol.unwrap_or(TOL_ATTRACTION);
    let dist_tol = tol / 10.0;
    let nf = n as f64;
    let mu = 2.0 + nf * (traj.p - 1.0);

    let (reference, lambda_ref) = if (traj.p - 1.0).abs() <= DELTA_LIMIT {
        let g = gaussian_profile(n, 1.0, grid)?;
        let l = 0.5 * nf * (2.0 * std::f64::consts::PI * std::f64::consts::E / nf).ln();
        (g, l)
    } else {
        let (spec, field) = barenblatt_profile(n, traj.p, grid)?;
        let l = spec.exact_lambda()?;
        (field, l)
    };
    let e_ref = reference.second_moment();

    let mut distances = Vec::with_capacity(traj.snapshots.len());
    let mut lambda_max = f64::MIN;
    for snap in &traj.snapshots {
        let a = (snap.report.second_moment / e_ref).sqrt();
        let rescaled = snap.field.dilate(a)?;
        distances.push(rescaled.l1_distance(&reference)?);
        lambda_max = lambda_max.max(snap.report.lambda);
    }
    let mut max_rise = f64::MIN;
    for pair in distances.windows(2) {
        max_rise = max_rise.max(pair[1] - pair[0]);
    }
    let ratio_ref = (mu / nf * lambda_ref).exp();
    let mut ratio_max = f64::MIN;
    for snap in &traj.snapshots {
        let ratio = snap.report.power
            / snap.report.second_moment.powf(1.0 + nf * (traj.p - 1.0) / 2.0);
        ratio_max = ratio_max.max(ratio);
    }

    let monotone = max_rise <= dist_tol;
    let lambda_ok = lambda_max <= lambda_ref + tol;
    let ratio_ok = ratio_max <= ratio_ref * (1.0 + tol);
    Ok(Certificate {
        check_id: "barenblatt_attraction".into(),
        params: traj_params(traj),
        lhs: lambda_max,
        rhs: lambda_ref,
        slack: lambda_ref - lambda_max,
        tol,
        pass: monotone && lambda_ok && ratio_ok,
        notes: format!(
            "moment-matched L1 distances {:?} (largest rise {max_rise:.3e}, allowed {dist_tol:.0e}); \
             max N_p/E^(mu/2) = {ratio_max:.10e} vs reference {ratio_ref:.10e}",
            distances.iter().map(|d| format!("{d:.4e}")).collect::<Vec<_>>()
        ),
    })
}
