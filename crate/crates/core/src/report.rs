//! Serialization of run artifacts: time series CSV, certificate JSON, the
//! resolved-configuration manifest, and the sharp-constants table.
//!
//! All floating-point output goes through [`fmt17`] (17 significant digits),
//! enough to round-trip any f64 bit pattern, so reruns of the same scenario
//! are byte-identical.

use crate::constants::{gamma_constant, gamma_constant_printed, sobolev_constant};
use crate::error::{Error, Result};
use crate::functionals::{entropy_power, fisher_information, DELTA_LIMIT, EPS_POS};
use crate::grid::RadialGrid;
use crate::profiles::{barenblatt_profile, gaussian_profile, BarenblattSpec};
use crate::scenario::ConfigMap;
use crate::solver::Snapshot;
use crate::verify::Certificate;
use std::path::Path;

/// Shortest representation that still parses back to the same bits.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

/// `t,mass,E,R_p,N_p,I_p,Lambda_p` rows, one per snapshot.
pub fn write_timeseries(path: &Path, snapshots: &[Snapshot]) -> Result<()> {
    let mut out = String::from("t,mass,E,R_p,N_p,I_p,Lambda_p\n");
    for s in snapshots {
        let r = &s.report;
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            fmt17(s.time),
            fmt17(s.mass),
            fmt17(r.second_moment),
            fmt17(r.renyi),
            fmt17(r.power),
            fmt17(r.fisher),
            fmt17(r.lambda),
        ));
    }
    std::fs::write(path, out)?;
    Ok(())
}

/// Pretty-printed JSON array of certificates, in the order they ran.
pub fn write_certificates(path: &Path, certificates: &[Certificate]) -> Result<()> {
    let mut json = serde_json::to_string_pretty(certificates)
        .map_err(|e| Error::Config(format!("certificate serialization: {e}")))?;
    json.push('\n');
    std::fs::write(path, json)?;
    Ok(())
}

/// Sorted `key = value` lines; the manifest doubles as a replayable config.
pub fn write_manifest(path: &Path, lines: &[String]) -> Result<()> {
    std::fs::write(path, lines.join("\n") + "\n")?;
    Ok(())
}

/// One row of the sharp-constants table. `printed` is the constant as the
/// source tables state it; `corrected` is the closed form this library
/// derives; `quadrature` re-measures the product N_p(f) I_p(f) on the
/// extremal profile with the numerical pipeline. Rows where printed and
/// corrected disagree by more than 1% are flagged.
#[derive(Debug, Clone)]
pub struct ConstantsRow {
    pub quantity: &'static str,
    pub n: usize,
    pub p: Option<f64>,
    pub printed: Option<f64>,
    pub corrected: f64,
    pub quadrature: Option<f64>,
    pub spread: Option<f64>,
    pub flagged: bool,
}

/// Relative printed-vs-corrected disagreement above this is flagged.
pub const SPREAD_FLAG_THRESHOLD: f64 = 1e-2;

fn parse_list(map: &ConfigMap, key: &str) -> Result<Vec<f64>> {
    let (value, _) = map
        .get(key)
        .ok_or_else(|| Error::Config(format!("missing required key '{key}'")))?;
    let list: Vec<f64> = value
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("'{key}': bad number '{}'", s.trim())))
        })
        .collect::<Result<_>>()?;
    if list.is_empty() {
        return Err(Error::Config(format!("'{key}' must be non-empty")));
    }
    Ok(list)
}

/// Measure N_p(f) I_p(f) for the extremal profile of (n, p) with the same
/// quadrature and differencing the rest of the library uses. The grid is
/// chosen automatically; for p < 1 the positivity mask and tail truncation
/// bias the value low by a few parts in 1e3, which is exactly the bias the
/// table is meant to expose.
fn quadrature_product(n: usize, p: f64) -> Result<f64> {
    let (field, p_eff) = if (p - 1.0).abs() <= DELTA_LIMIT {
        let grid = RadialGrid::new(n, 16.0, 8000)?;
        (gaussian_profile(n, 1.0, &grid)?, 1.0)
    } else {
        let spec = BarenblattSpec::new(n, p)?;
        let (r_max, cells) = if p > 1.0 {
            (1.05 * spec.support_radius().expect("compact support for p > 1"), 4000)
        } else {
            // extend past the positivity-mask radius so the mask, not the
            // grid edge, decides where the tail stops counting
            let sigma = 1.0 / (1.0 - p);
            let r_mask = ((EPS_POS.powf(-1.0 / sigma) - spec.closed_form_c()) / spec.lam().abs())
                .sqrt();
            let r_max = (1.05 * r_mask).max(spec.suggested_r_max(1e-6));
            let cells = ((r_max / 0.2).ceil() as usize).clamp(8000, 200_000);
            (r_max, cells)
        };
        let grid = RadialGrid::new(n, r_max, cells)?;
        (barenblatt_profile(n, p, &grid)?.1, p)
    };
    Ok(entropy_power(&field, p_eff)? * fisher_information(&field, p_eff)?)
}

/// Build the constants table for `n_list` x `p_list` (gamma rows, filtered
/// to the admissible p > n/(n+2)) plus one Sobolev row per n > 2. An empty
/// admissible set is a configuration error.
pub fn constants_rows(n_list: &[usize], p_list: &[f64]) -> Result<Vec<ConstantsRow>> {
    let mut rows = Vec::new();
    for &n in n_list {
        if n == 0 {
            return Err(Error::Config("n_list entries must be >= 1".into()));
        }
        let nf = n as f64;
        for &p in p_list {
            if !(p > 0.0) || !p.is_finite() {
                return Err(Error::Config(format!("p_list entry {p} must be positive")));
            }
            if p <= nf / (nf + 2.0) {
                continue; // constant undefined below the moment threshold
            }
            let corrected = gamma_constant(n, p)?;
            let printed = gamma_constant_printed(n, p)?;
            let spread = (printed - corrected).abs() / corrected;
            rows.push(ConstantsRow {
                quantity: "gamma",
                n,
                p: Some(p),
                printed: Some(printed),
                corrected,
                quadrature: Some(quadrature_product(n, p)?),
                spread: Some(spread),
                flagged: spread > SPREAD_FLAG_THRESHOLD,
            });
        }
        if n > 2 {
            rows.push(ConstantsRow {
                quantity: "sobolev",
                n,
                p: None,
                printed: None,
                corrected: sobolev_constant(n)?,
                quadrature: None,
                spread: None,
                flagged: false,
            });
        }
    }
    if rows.is_empty() {
        return Err(Error::Config(
            "no admissible (n, p) pairs: every requested p is at or below n/(n+2)".into(),
        ));
    }
    Ok(rows)
}

fn opt17(x: Option<f64>) -> String {
    x.map(fmt17).unwrap_or_default()
}

/// Write `constants.csv` + `manifest.txt` into `out_dir` from a config with
/// `n_list` and `p_list` keys. Flagged rows are informational: the command
/// succeeds whenever the table is non-empty.
pub fn run_constants_table(map: &ConfigMap, out_dir: &Path) -> Result<Vec<ConstantsRow>> {
    for key in map.keys() {
        if key != "n_list" && key != "p_list" {
            return Err(Error::Config(format!("unknown key '{key}' (expected n_list, p_list)")));
        }
    }
    let n_list: Vec<usize> = parse_list(map, "n_list")?
        .into_iter()
        .map(|x| {
            if x.fract() == 0.0 && x >= 1.0 && x <= 64.0 {
                Ok(x as usize)
            } else {
                Err(Error::Config(format!("'n_list': bad dimension {x}")))
            }
        })
        .collect::<Result<_>>()?;
    let p_list = parse_list(map, "p_list")?;
    let rows = constants_rows(&n_list, &p_list)?;

    std::fs::create_dir_all(out_dir)?;
    let mut csv = String::from("quantity,n,p,printed,corrected,quadrature,spread,flagged\n");
    for r in &rows {
        csv.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.quantity,
            r.n,
            opt17(r.p),
            opt17(r.printed),
            fmt17(r.corrected),
            opt17(r.quadrature),
            opt17(r.spread),
            r.flagged,
        ));
    }
    std::fs::write(out_dir.join("constants.csv"), csv)?;

    let manifest = vec![
        format!(
            "n_list = {}",
            n_list.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(", ")
        ),
        format!(
            "p_list = {}",
            p_list.iter().map(|&p| fmt17(p)).collect::<Vec<_>>().join(", ")
        ),
    ];
    write_manifest(&out_dir.join("manifest.txt"), &manifest)?;
    Ok(rows)
}
