//! Sharp constants: γ_{n,p} for the entropy-power/Fisher product and the
//! Sobolev constant S_n recovered from the p = (n-1)/n endpoint.

use crate::error::{Error, Result};
use crate::functionals::DELTA_LIMIT;
use crate::special::{gamma, ln_gamma};

const PI: f64 = std::f64::consts::PI;

fn admissible(n: usize, p: f64) -> Result<()> {
    let nf = n as f64;
    if n == 0 {
        return Err(Error::ParameterRange("dimension must be >= 1".into()));
    }
    if !(p > nf / (nf + 2.0)) {
        return Err(Error::ParameterRange(format!(
            "gamma constant needs p > n/(n+2) = {}, got {p}",
            nf / (nf + 2.0)
        )));
    }
    Ok(())
}

/// The common scaffold: n π (2p/|p-1|) · (Γ-ratio)^{2/n} · scale^{μ/(n(p-1))},
/// with the Γ arguments supplied by the caller.
fn gamma_shape(n: usize, p: f64, top: f64, bottom: f64) -> f64 {
    let nf = n as f64;
    let mu = 2.0 + nf * (p - 1.0);
    let ratio = ((ln_gamma(top) - ln_gamma(bottom)) * 2.0 / nf).exp();
    let scale = ((nf + 2.0) * p - nf) / (2.0 * p);
    nf * PI * (2.0 * p / (p - 1.0).abs()) * ratio * scale.powf(mu / (nf * (p - 1.0)))
}

/// The sharp constant γ_{n,p} in N_p(f)·I_p(f) ≥ γ_{n,p}.
///
/// For p > 1 this evaluates the corrected Gamma arguments Γ(p/(p-1)) and
/// Γ(n/2 + p/(p-1)); the form with Γ((p+1)/p) (see
/// [`gamma_constant_printed`]) disagrees with the defining equality
/// N_p(M̃)·I_p(M̃) — at (n,p) = (1,2) it gives 125π²/64 ≈ 19.28 while the
/// equality case evaluates exactly to 125/9. Orders within δ_limit of 1
/// return the Shannon value 2πen.
pub fn gamma_constant(n: usize, p: f64) -> Result<f64> {
    admissible(n, p)?;
    if (p - 1.0).abs() <= DELTA_LIMIT {
        return Ok(2.0 * PI * std::f64::consts::E * n as f64);
    }
    let nf = n as f64;
    if p > 1.0 {
        let a = p / (p - 1.0);
        Ok(gamma_shape(n, p, a, nf / 2.0 + a))
    } else {
        let sig = 1.0 / (1.0 - p);
        Ok(gamma_shape(n, p, sig - nf / 2.0, sig))
    }
}

/// γ_{n,p} exactly as the source formula prints it: Γ((p+1)/p) arguments for
/// p > 1. The p < 1 branch is identical to [`gamma_constant`]. Kept so
/// reports can show both values side by side instead of silently choosing.
pub fn gamma_constant_printed(n: usize, p: f64) -> Result<f64> {
    admissible(n, p)?;
    if (p - 1.0).abs() <= DELTA_LIMIT {
        return Ok(2.0 * PI * std::f64::consts::E * n as f64);
    }
    let nf = n as f64;
    if p > 1.0 {
        let a = (p + 1.0) / p;
        Ok(gamma_shape(n, p, a, nf / 2.0 + a))
    } else {
        gamma_constant(n, p)
    }
}

/// Sharp Sobolev constant S_n = n(n-2)π·(Γ(n/2)/Γ(n))^{2/n} for n > 2; also
/// equal to ((n-2)/(2n-2))²·γ_{n,(n-1)/n}.
pub fn sobolev_constant(n: usize) -> Result<f64> {
    if n <= 2 {
        return Err(Error::ParameterRange(format!(
            "the Sobolev endpoint needs n > 2, got {n}"
        )));
    }
    let nf = n as f64;
    Ok(nf * (nf - 2.0) * PI * (gamma(nf / 2.0) / gamma(nf)).powf(2.0 / nf))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn frozen_gamma_values_p_below_1() {
        assert!(rel(gamma_constant(1, 0.5).unwrap(), 4.0 * PI * PI) < 1e-13);
        assert!(rel(gamma_constant(1, 0.5).unwrap(), 39.478417604357434) < 1e-13);
        assert!(rel(gamma_constant(1, 2.0 / 3.0).unwrap(), 23.39461783961922) < 1e-13);
        assert!(rel(gamma_constant(1, 0.75).unwrap(), 20.72143183217513) < 1e-13);
        assert!(rel(gamma_constant(2, 2.0 / 3.0).unwrap(), 50.265482457436692) < 1e-13);
        assert!(rel(gamma_constant(2, 0.75).unwrap(), 42.411500823462209) < 1e-13);
        assert!(rel(gamma_constant(3, 2.0 / 3.0).unwrap(), 87.64646543250131) < 1e-13);
        assert!(rel(gamma_constant(3, 0.75).unwrap(), 65.734849074375982) < 1e-13);
        assert!(rel(gamma_constant(4, 0.75).unwrap(), 92.343587771654215) < 1e-13);
        // printed and corrected agree on this branch
        assert_eq!(
            gamma_constant(2, 2.0 / 3.0).unwrap(),
            gamma_constant_printed(2, 2.0 / 3.0).unwrap()
        );
    }

    #[test]
    fn frozen_gamma_values_p_above_1() {
        assert!(rel(gamma_constant(1, 2.0).unwrap(), 125.0 / 9.0) < 1e-13);
        assert!(rel(gamma_constant(1, 1.5).unwrap(), 14.755116598079561) < 1e-13);
        assert!(rel(gamma_constant(1, 3.0).unwrap(), 13.159472534785811) < 1e-13);
        assert!(rel(gamma_constant(2, 1.5).unwrap(), 29.786952567369891) < 1e-13);
        assert!(rel(gamma_constant(2, 2.0).unwrap(), 9.0 * PI) < 1e-13);
        assert!(rel(gamma_constant(3, 1.5).unwrap(), 45.03593090891726) < 1e-13);
        assert!(rel(gamma_constant(3, 2.0).unwrap(), 43.020659220248538) < 1e-13);
        assert!(rel(gamma_constant(3, 3.0).unwrap(), 41.41036003023441) < 1e-13);
        assert!(rel(gamma_constant(4, 2.0).unwrap(), 58.041579655494971) < 1e-13);
    }

    #[test]
    fn printed_form_differs_above_1() {
        assert!(rel(gamma_constant_printed(1, 2.0).unwrap(), 125.0 * PI * PI / 64.0) < 1e-13);
        assert!(rel(gamma_constant_printed(1, 2.0).unwrap(), 19.276571095877654) < 1e-13);
        assert!(rel(gamma_constant_printed(1, 1.5).unwrap(), 28.342538319878386) < 1e-13);
        assert!(rel(gamma_constant_printed(3, 2.0).unwrap(), 55.684949468924776) < 1e-13);
        // the spread at (1,2) is the flagged discrepancy
        let spread = (gamma_constant_printed(1, 2.0).unwrap() - gamma_constant(1, 2.0).unwrap()).abs()
            / gamma_constant(1, 2.0).unwrap();
        assert!(spread > 0.38 && spread < 0.39);
    }

    #[test]
    fn shannon_limit_returns_gaussian_product() {
        for n in 1..=4 {
            let v = gamma_constant(n, 1.0).unwrap();
            assert!(rel(v, 2.0 * PI * std::f64::consts::E * n as f64) < 1e-15);
        }
        assert!(rel(gamma_constant(1, 1.0).unwrap(), 17.079468445347134) < 1e-13);
        // within the band, same value
        assert_eq!(gamma_constant(2, 1.0 + 5e-7).unwrap(), gamma_constant(2, 1.0).unwrap());
    }

    #[test]
    fn admissibility_gate() {
        assert!(gamma_constant(1, 1.0 / 3.0).is_err());
        assert!(gamma_constant(2, 0.5).is_err()); // n/(n+2) = 1/2
        assert!(gamma_constant(3, 0.6).is_err()); // 3/5
        assert!(gamma_constant(3, 0.61).is_ok());
    }

    #[test]
    fn sobolev_frozen_values_and_gate() {
        assert!(sobolev_constant(2).is_err());
        assert!(sobolev_constant(1).is_err());
        assert!(rel(sobolev_constant(3).unwrap(), 5.4779040895313319) < 1e-13);
        assert!(rel(sobolev_constant(4).unwrap(), 10.260398641294913) < 1e-13);
        assert!(rel(sobolev_constant(4).unwrap(), 8.0 * PI / 6.0_f64.sqrt()) < 1e-13);
        assert!(rel(sobolev_constant(5).unwrap(), 14.811911720005934) < 1e-13);
        assert!(rel(sobolev_constant(6).unwrap(), 19.259456665473206) < 1e-13);
        // direct form at n=3: 3π(Γ(3/2)/Γ(3))^{2/3}
        let direct = 3.0 * PI * (gamma(1.5) / gamma(3.0)).powf(2.0 / 3.0);
        assert!(rel(sobolev_constant(3).unwrap(), direct) < 1e-15);
    }

    #[test]
    fn sobolev_identity_with_gamma_endpoint() {
        // S_n = ((n-2)/(2n-2))² γ_{n,(n-1)/n}
        for n in 3..=6 {
            let nf = n as f64;
            let endpoint = gamma_constant(n, (nf - 1.0) / nf).unwrap();
            let lhs = ((nf - 2.0) / (2.0 * nf - 2.0)).powi(2) * endpoint;
            assert!(
                rel(lhs, sobolev_constant(n).unwrap()) < 1e-12,
                "n = {n}: {} vs {}",
                lhs,
                sobolev_constant(n).unwrap()
            );
        }
    }

    #[test]
    fn gamma_endpoint_matches_display_form() {
        // γ_{n,(n-1)/n} = nπ·4(n-1)²/(n-2)·(Γ(n/2)/Γ(n))^{2/n} at n=3:
        // 48π(Γ(3/2)/Γ(3))^{2/3}
        let display = 48.0 * PI * (gamma(1.5) / gamma(3.0)).powf(2.0 / 3.0);
        assert!(rel(gamma_constant(3, 2.0 / 3.0).unwrap(), display) < 1e-13);
    }
}
