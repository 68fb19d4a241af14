//! Configuration-driven experiment runner. Parses flat key = value scenario
//! files, validates them against the preconditions of every requested
//! operation, runs the solver and checks, and hands structured results to
//! [`crate::report`] for serialization.
//!
//! The runner never computes mathematics itself: every number it reports
//! comes out of a library call.

use crate::density::DensityField;
use crate::error::{Error, Result};
use crate::functionals::{FunctionalReport, DELTA_LIMIT};
use crate::grid::RadialGrid;
use crate::profiles::{
    gaussian_profile, self_similar_snapshot, two_shell_profile, uniform_ball_profile,
    BarenblattSpec, Shell,
};
use crate::report;
use crate::solver::{evolve, Snapshot, SolverConfig, Trajectory};
use crate::verify::{
    check_barenblatt_attraction, check_concavity, check_debruijn, check_isoperimetric,
    check_lambda_monotone, check_moment_law, check_power_linearity, check_sobolev, Certificate,
    CheckParams, GridParams,
};
use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

/// Cap on sweep parallelism; unset means one worker per available core.
pub const MAX_WORKERS_ENV: &str = "ENTROFLOW_MAX_WORKERS";

/// Parsed key = value entries with the line each came from (line 0 marks
/// command-line overrides and synthesized entries).
#[derive(Debug, Clone, Default)]
pub struct ConfigMap {
    entries: BTreeMap<String, (String, usize)>,
}

impl ConfigMap {
    /// Parse a flat configuration file: one `key = value` per line, blank
    /// lines and `#` comments ignored, duplicate keys rejected.
    pub fn parse(text: &str) -> Result<ConfigMap> {
        let mut entries = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let stripped = raw.split('#').next().unwrap_or("").trim();
            if stripped.is_empty() {
                continue;
            }
            let (key, value) = stripped.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {line}: expected 'key = value', got '{stripped}'"))
            })?;
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            if key.is_empty() {
                return Err(Error::Config(format!("line {line}: empty key")));
            }
            if let Some((_, first)) = entries.get(&key) {
                return Err(Error::Config(format!(
                    "line {line}: duplicate key '{key}' (first set at line {first})"
                )));
            }
            entries.insert(key, (value, line));
        }
        Ok(ConfigMap { entries })
    }

    /// Apply `--set key=value` overrides; later entries win.
    pub fn apply_overrides(&mut self, sets: &[String]) -> Result<()> {
        for s in sets {
            let (key, value) = s.split_once('=').ok_or_else(|| {
                Error::Config(format!("--set '{s}': expected KEY=VALUE"))
            })?;
            self.entries
                .insert(key.trim().to_string(), (value.trim().to_string(), 0));
        }
        Ok(())
    }

    pub(crate) fn get(&self, key: &str) -> Option<&(String, usize)> {
        self.entries.get(key)
    }

    pub(crate) fn keys(&self) -> impl Iterator<Item = &String> {
        self.entries.keys()
    }

    fn insert(&mut self, key: &str, value: String) {
        self.entries.insert(key.to_string(), (value, 0));
    }

    fn remove(&mut self, key: &str) -> Option<(String, usize)> {
        self.entries.remove(key)
    }
}

fn where_is(line: usize) -> String {
    if line == 0 {
        "override".into()
    } else {
        format!("line {line}")
    }
}

/// The checks a scenario may request, in the order they are defined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckId {
    Debruijn,
    MomentLaw,
    LambdaMonotone,
    Concavity,
    Isoperimetric,
    PowerLinearity,
    Sobolev,
    BarenblattAttraction,
}

impl CheckId {
    pub const ALL: [CheckId; 8] = [
        CheckId::Debruijn,
        CheckId::MomentLaw,
        CheckId::LambdaMonotone,
        CheckId::Concavity,
        CheckId::Isoperimetric,
        CheckId::PowerLinearity,
        CheckId::Sobolev,
        CheckId::BarenblattAttraction,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckId::Debruijn => "debruijn",
            CheckId::MomentLaw => "moment_law",
            CheckId::LambdaMonotone => "lambda_monotone",
            CheckId::Concavity => "concavity",
            CheckId::Isoperimetric => "isoperimetric",
            CheckId::PowerLinearity => "power_linearity",
            CheckId::Sobolev => "sobolev",
            CheckId::BarenblattAttraction => "barenblatt_attraction",
        }
    }

    /// Whether the check consumes the solved trajectory (as opposed to the
    /// initial datum or closed forms only).
    fn needs_trajectory(self) -> bool {
        !matches!(self, CheckId::Isoperimetric | CheckId::PowerLinearity | CheckId::Sobolev)
    }
}

impl FromStr for CheckId {
    type Err = Error;
    fn from_str(s: &str) -> Result<CheckId> {
        CheckId::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| {
                Error::Config(format!(
                    "unknown check '{s}' (valid: {})",
                    CheckId::ALL.map(|c| c.as_str()).join(", ")
                ))
            })
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Initial datum selector.
#[derive(Debug, Clone, PartialEq)]
pub enum ProfileKind {
    Gaussian { sigma: f64 },
    Barenblatt,
    UniformBall { radius: f64 },
    TwoShell { inner: Shell, outer: Shell },
}

impl ProfileKind {
    fn name(&self) -> &'static str {
        match self {
            ProfileKind::Gaussian { .. } => "gaussian",
            ProfileKind::Barenblatt => "barenblatt",
            ProfileKind::UniformBall { .. } => "uniform-ball",
            ProfileKind::TwoShell { .. } => "two-shell",
        }
    }
}

/// A fully resolved, validated scenario.
#[derive(Debug, Clone)]
pub struct ScenarioConfig {
    pub scenario: String,
    pub n: usize,
    pub p: f64,
    pub kappa: f64,
    pub profile: ProfileKind,
    pub grid_r_max: f64,
    pub grid_cells: usize,
    pub t0: f64,
    pub times: Vec<f64>,
    pub checks: Vec<CheckId>,
    pub cfl_safety: f64,
    pub floor: f64,
    pub tol_overrides: BTreeMap<CheckId, f64>,
}

struct Resolver<'a> {
    map: &'a ConfigMap,
}

impl<'a> Resolver<'a> {
    fn raw(&self, key: &str) -> Option<&'a (String, usize)> {
        self.map.get(key)
    }

    fn required(&self, key: &str) -> Result<&'a (String, usize)> {
        self.raw(key)
            .ok_or_else(|| Error::Config(format!("missing required key '{key}'")))
    }

    fn f64_of(&self, key: &str, value: &str, line: usize) -> Result<f64> {
        value.parse::<f64>().map_err(|_| {
            Error::Config(format!("{}: '{key}' is not a number: '{value}'", where_is(line)))
        })
    }

    fn usize_of(&self, key: &str, value: &str, line: usize) -> Result<usize> {
        value.parse::<usize>().map_err(|_| {
            Error::Config(format!(
                "{}: '{key}' is not a non-negative integer: '{value}'",
                where_is(line)
            ))
        })
    }

    fn required_f64(&self, key: &str) -> Result<(f64, usize)> {
        let (v, l) = self.required(key)?;
        Ok((self.f64_of(key, v, *l)?, *l))
    }

    fn optional_f64(&self, key: &str, default: f64) -> Result<(f64, usize)> {
        match self.raw(key) {
            Some((v, l)) => Ok((self.f64_of(key, v, *l)?, *l)),
            None => Ok((default, 0)),
        }
    }

    fn f64_list(&self, key: &str, value: &str, line: usize) -> Result<Vec<f64>> {
        value
            .split(',')
            .map(|s| self.f64_of(key, s.trim(), line))
            .collect()
    }
}

const PROFILE_PARAM_KEYS: [(&str, &str); 8] = [
    ("sigma", "gaussian"),
    ("radius", "uniform-ball"),
    ("shell1.center", "two-shell"),
    ("shell1.width", "two-shell"),
    ("shell1.weight", "two-shell"),
    ("shell2.center", "two-shell"),
    ("shell2.width", "two-shell"),
    ("shell2.weight", "two-shell"),
];

/// Resolve and validate a scenario configuration. Every error names the
/// offending key and, where possible, the line it was set on.
pub fn resolve_scenario(map: &ConfigMap) -> Result<ScenarioConfig> {
    let r = Resolver { map };

    // reject unknown keys first so typos cannot silently default
    for key in map.keys() {
        let known = matches!(
            key.as_str(),
            "scenario"
                | "n"
                | "p"
                | "kappa"
                | "profile"
                | "grid.r_max"
                | "grid.cells"
                | "t0"
                | "times"
                | "checks"
                | "cfl_safety"
                | "floor"
        ) || PROFILE_PARAM_KEYS.iter().any(|(k, _)| k == key)
            || key.strip_prefix("tol.").is_some_and(|c| CheckId::from_str(c).is_ok());
        if !known {
            let (_, line) = map.get(key).unwrap();
            return Err(Error::Config(format!(
                "{}: unknown key '{key}'",
                where_is(*line)
            )));
        }
    }

    let (scenario, sline) = r.required("scenario")?;
    if scenario.is_empty()
        || !scenario
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | '.'))
    {
        return Err(Error::Config(format!(
            "{}: scenario name must be non-empty and use only [A-Za-z0-9._-], got '{scenario}'",
            where_is(*sline)
        )));
    }

    let (nv, nline) = r.required("n")?;
    let n = r.usize_of("n", nv, *nline)?;
    if n == 0 {
        return Err(Error::Config(format!("{}: n must be >= 1", where_is(*nline))));
    }
    let nf = n as f64;

    let (p, pline) = r.required_f64("p")?;
    if !(p > 0.0) || !p.is_finite() {
        return Err(Error::Config(format!("{}: p must be positive", where_is(pline))));
    }
    if !(p > (nf - 2.0) / nf) {
        return Err(Error::Config(format!(
            "{}: the flow needs p > (n-2)/n = {}; got p = {p}",
            where_is(pline),
            (nf - 2.0) / nf
        )));
    }

    let (kappa, kline) = r.optional_f64("kappa", 1.0)?;
    if !(kappa > 0.0) || !kappa.is_finite() {
        return Err(Error::Config(format!("{}: kappa must be positive", where_is(kline))));
    }

    let (profile_name, profline) = r.required("profile")?;
    let profile = match profile_name.as_str() {
        "gaussian" => {
            let (sigma, sl) = r.optional_f64("sigma", 1.0)?;
            if !(sigma > 0.0) {
                return Err(Error::Config(format!("{}: sigma must be positive", where_is(sl))));
            }
            ProfileKind::Gaussian { sigma }
        }
        "barenblatt" => ProfileKind::Barenblatt,
        "uniform-ball" => {
            let (radius, rl) = r.optional_f64("radius", 1.0)?;
            if !(radius > 0.0) {
                return Err(Error::Config(format!("{}: radius must be positive", where_is(rl))));
            }
            ProfileKind::UniformBall { radius }
        }
        "two-shell" => {
            let mut vals = [0.0; 6];
            for (i, key) in [
                "shell1.center",
                "shell1.width",
                "shell1.weight",
                "shell2.center",
                "shell2.width",
                "shell2.weight",
            ]
            .iter()
            .enumerate()
            {
                vals[i] = r.required_f64(key)?.0;
            }
            ProfileKind::TwoShell {
                inner: Shell { center: vals[0], width: vals[1], weight: vals[2] },
                outer: Shell { center: vals[3], width: vals[4], weight: vals[5] },
            }
        }
        other => {
            return Err(Error::Config(format!(
                "{}: unknown profile '{other}' (valid: gaussian, barenblatt, uniform-ball, two-shell)",
                where_is(*profline)
            )))
        }
    };

    // reject parameters that belong to a different profile
    for (key, owner) in PROFILE_PARAM_KEYS {
        if let Some((_, line)) = r.raw(key) {
            if *owner != *profile.name() {
                return Err(Error::Config(format!(
                    "{}: '{key}' is a parameter of profile '{owner}', not '{}'",
                    where_is(*line),
                    profile.name()
                )));
            }
        }
    }

    let (grid_r_max, gline) = r.required_f64("grid.r_max")?;
    if !(grid_r_max > 0.0) || !grid_r_max.is_finite() {
        return Err(Error::Config(format!("{}: grid.r_max must be positive", where_is(gline))));
    }
    let (cv, cline) = r.required("grid.cells")?;
    let grid_cells = r.usize_of("grid.cells", cv, *cline)?;
    if grid_cells < 16 {
        return Err(Error::Config(format!(
            "{}: grid.cells must be at least 16",
            where_is(*cline)
        )));
    }

    let (t0, t0line) = r.optional_f64("t0", 0.0)?;
    if !t0.is_finite() {
        return Err(Error::Config(format!("{}: t0 must be finite", where_is(t0line))));
    }

    let (tv, tline) = r.required("times")?;
    let times = r.f64_list("times", tv, *tline)?;
    if times.is_empty() {
        return Err(Error::Config(format!("{}: times must be non-empty", where_is(*tline))));
    }
    let mut prev = t0;
    for &t in &times {
        if !t.is_finite() || t <= prev {
            return Err(Error::Config(format!(
                "{}: times must be strictly increasing beyond t0 = {t0}; offending entry {t}",
                where_is(*tline)
            )));
        }
        prev = t;
    }

    let checks: Vec<CheckId> = match r.raw("checks") {
        None => Vec::new(),
        Some((v, line)) => {
            let mut out = Vec::new();
            for part in v.split(',') {
                let part = part.trim();
                if part.is_empty() {
                    continue;
                }
                let id = CheckId::from_str(part).map_err(|e| {
                    Error::Config(format!("{}: {e}", where_is(*line)))
                })?;
                if out.contains(&id) {
                    return Err(Error::Config(format!(
                        "{}: check '{id}' listed twice",
                        where_is(*line)
                    )));
                }
                out.push(id);
            }
            out
        }
    };

    let mut tol_overrides = BTreeMap::new();
    for key in map.keys() {
        if let Some(name) = key.strip_prefix("tol.") {
            let id = CheckId::from_str(name)?;
            let (v, line) = map.get(key).unwrap();
            if !checks.contains(&id) {
                return Err(Error::Config(format!(
                    "{}: tolerance override for '{id}', which is not in 'checks'",
                    where_is(*line)
                )));
            }
            let tol = r.f64_of(key, v, *line)?;
            if !(tol > 0.0) || !tol.is_finite() {
                return Err(Error::Config(format!(
                    "{}: '{key}' must be a positive tolerance",
                    where_is(*line)
                )));
            }
            tol_overrides.insert(id, tol);
        }
    }

    let (cfl_safety, cfline) = r.optional_f64("cfl_safety", 0.5)?;
    if !(cfl_safety > 0.0 && cfl_safety <= 1.0) {
        return Err(Error::Config(format!(
            "{}: cfl_safety must lie in (0, 1]",
            where_is(cfline)
        )));
    }
    let (floor, fline) = r.optional_f64("floor", 1e-12)?;
    if !(floor > 0.0) || !floor.is_finite() {
        return Err(Error::Config(format!("{}: floor must be positive", where_is(fline))));
    }

    let cfg = ScenarioConfig {
        scenario: scenario.clone(),
        n,
        p,
        kappa,
        profile,
        grid_r_max,
        grid_cells,
        t0,
        times,
        checks,
        cfl_safety,
        floor,
        tol_overrides,
    };
    validate_check_preconditions(&cfg)?;
    Ok(cfg)
}

/// Every requested check must be runnable for this (n, p, schedule) — a
/// violated precondition is a configuration error, not a failed certificate.
fn validate_check_preconditions(cfg: &ScenarioConfig) -> Result<()> {
    let nf = cfg.n as f64;
    let snapshots = cfg.times.len() + 1; // trajectory includes the t0 state
    let moment_ok = cfg.p > nf / (nf + 2.0);
    for &check in &cfg.checks {
        let fail = |msg: String| -> Result<()> {
            Err(Error::Config(format!("check '{check}': {msg}")))
        };
        match check {
            CheckId::Debruijn | CheckId::MomentLaw => {
                if snapshots < 3 {
                    return fail(format!(
                        "needs at least 3 snapshots (t0 plus 2 times), schedule has {snapshots}"
                    ));
                }
            }
            CheckId::LambdaMonotone | CheckId::Isoperimetric => {
                if !moment_ok {
                    return fail(format!(
                        "needs p > n/(n+2) = {}; got p = {}",
                        nf / (nf + 2.0),
                        cfg.p
                    ));
                }
            }
            CheckId::Concavity => {
                if snapshots < 4 {
                    return fail(format!(
                        "needs at least 4 snapshots (t0 plus 3 times), schedule has {snapshots}"
                    ));
                }
                let full = full_schedule(cfg);
                let dt0 = full[1] - full[0];
                for pair in full.windows(2) {
                    if (((pair[1] - pair[0]) - dt0) / dt0).abs() > 1e-9 {
                        return fail(format!(
                            "needs uniformly spaced snapshots including t0; steps {dt0} and {}",
                            pair[1] - pair[0]
                        ));
                    }
                }
            }
            CheckId::PowerLinearity => {
                if (cfg.p - 1.0).abs() <= DELTA_LIMIT {
                    return fail("needs p away from 1 (self-similar profile undefined at p = 1)".into());
                }
                let count = cfg.times.len() + usize::from(cfg.t0 > 0.0);
                if count < 4 {
                    return fail(format!(
                        "needs at least 4 positive sample times, schedule provides {count}"
                    ));
                }
            }
            CheckId::Sobolev => {
                if cfg.n <= 2 {
                    return fail(format!("needs n > 2, got n = {}", cfg.n));
                }
            }
            CheckId::BarenblattAttraction => {
                if !moment_ok {
                    return fail(format!(
                        "needs p > n/(n+2) = {}; got p = {}",
                        nf / (nf + 2.0),
                        cfg.p
                    ));
                }
                if snapshots < 3 {
                    return fail(format!(
                        "needs at least 3 snapshots, schedule has {snapshots}"
                    ));
                }
            }
        }
    }
    if matches!(cfg.profile, ProfileKind::Barenblatt) {
        if (cfg.p - 1.0).abs() <= DELTA_LIMIT {
            return Err(Error::Config(
                "profile 'barenblatt' needs p away from 1; use 'gaussian' for heat flow".into(),
            ));
        }
        if !(cfg.t0 > 0.0) {
            return Err(Error::Config(
                "profile 'barenblatt' starts from the self-similar member at t0 and needs t0 > 0".into(),
            ));
        }
    }
    Ok(())
}

fn full_schedule(cfg: &ScenarioConfig) -> Vec<f64> {
    let mut s = Vec::with_capacity(cfg.times.len() + 1);
    s.push(cfg.t0);
    s.extend_from_slice(&cfg.times);
    s
}

fn build_initial(cfg: &ScenarioConfig, grid: &RadialGrid) -> Result<DensityField> {
    match &cfg.profile {
        ProfileKind::Gaussian { sigma } => gaussian_profile(cfg.n, *sigma, grid),
        ProfileKind::Barenblatt => {
            let spec = BarenblattSpec::new(cfg.n, cfg.p)?;
            self_similar_snapshot(&spec, cfg.t0, grid)
        }
        ProfileKind::UniformBall { radius } => uniform_ball_profile(cfg.n, *radius, grid),
        ProfileKind::TwoShell { inner, outer } => {
            two_shell_profile(cfg.n, *inner, *outer, grid)
        }
    }
}

/// What a scenario run produced. `solver_error` is set when the march was
/// aborted; trajectory checks are then reported as failed certificates.
#[derive(Debug)]
pub struct ScenarioOutcome {
    pub certificates: Vec<Certificate>,
    pub all_passed: bool,
    pub solver_error: Option<String>,
}

/// Whether to run the requested checks (`verify`) or stop at the trajectory
/// (`solve`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunMode {
    Solve,
    Verify,
}

fn run_check(
    cfg: &ScenarioConfig,
    check: CheckId,
    initial: &DensityField,
    grid: &RadialGrid,
    traj: Option<&Trajectory>,
) -> Result<Certificate> {
    let tol = cfg.tol_overrides.get(&check).copied();
    match check {
        CheckId::Debruijn => check_debruijn(traj.unwrap(), tol),
        CheckId::MomentLaw => check_moment_law(traj.unwrap(), tol),
        CheckId::LambdaMonotone => check_lambda_monotone(traj.unwrap(), tol),
        CheckId::Concavity => check_concavity(traj.unwrap(), tol),
        CheckId::BarenblattAttraction => check_barenblatt_attraction(traj.unwrap(), tol),
        CheckId::Isoperimetric => check_isoperimetric(initial, cfg.p, tol),
        CheckId::Sobolev => check_sobolev(initial, tol),
        CheckId::PowerLinearity => {
            let spec = BarenblattSpec::new(cfg.n, cfg.p)?;
            let times: Vec<f64> = if cfg.t0 > 0.0 {
                full_schedule(cfg)
            } else {
                cfg.times.clone()
            };
            check_power_linearity(&spec, &times, grid, tol)
        }
    }
}

fn aborted_certificate(cfg: &ScenarioConfig, check: CheckId, reason: &str) -> Certificate {
    Certificate {
        check_id: check.as_str().to_string(),
        params: CheckParams {
            n: cfg.n,
            p: cfg.p,
            kappa: Some(cfg.kappa),
            grid: GridParams { r_max: cfg.grid_r_max, cells: cfg.grid_cells },
            times: full_schedule(cfg),
        },
        lhs: 0.0,
        rhs: 0.0,
        slack: -1.0,
        tol: 0.0,
        pass: false,
        notes: format!("not evaluated: solver abort: {reason}"),
    }
}

/// Run one scenario into `out_dir`: timeseries.csv (+ certificates.json in
/// verify mode) + manifest.txt. Returns the outcome; configuration-level
/// failures (bad grid, infeasible profile) come back as errors.
pub fn run_scenario(cfg: &ScenarioConfig, out_dir: &Path, mode: RunMode) -> Result<ScenarioOutcome> {
    std::fs::create_dir_all(out_dir)?;
    let grid = RadialGrid::new(cfg.n, cfg.grid_r_max, cfg.grid_cells)?;
    let initial = build_initial(cfg, &grid)?;

    let solver_cfg = SolverConfig {
        kappa: cfg.kappa,
        cfl_safety: cfg.cfl_safety,
        floor: cfg.floor,
        t0: cfg.t0,
        snapshot_times: cfg.times.clone(),
    };
    let (snapshots, traj, solver_error) = match evolve(&initial, cfg.p, &solver_cfg) {
        Ok(traj) => (traj.snapshots.clone(), Some(traj), None),
        Err(e) => {
            // record at least the initial state so the time series is not empty
            let report = FunctionalReport::compute(&initial, cfg.p)?;
            let snap = Snapshot {
                time: cfg.t0,
                field: initial.clone(),
                mass: initial.mass(),
                report,
            };
            (vec![snap], None, Some(e.to_string()))
        }
    };

    report::write_timeseries(&out_dir.join("timeseries.csv"), &snapshots)?;

    let mut certificates = Vec::new();
    if mode == RunMode::Verify {
        for &check in &cfg.checks {
            let cert = if check.needs_trajectory() {
                match (&traj, &solver_error) {
                    (Some(t), _) => run_check(cfg, check, &initial, &grid, Some(t))?,
                    (None, Some(reason)) => aborted_certificate(cfg, check, reason),
                    (None, None) => unreachable!("no trajectory implies a solver error"),
                }
            } else {
                run_check(cfg, check, &initial, &grid, None)?
            };
            certificates.push(cert);
        }
        report::write_certificates(&out_dir.join("certificates.json"), &certificates)?;
    }

    report::write_manifest(&out_dir.join("manifest.txt"), &manifest_lines(cfg))?;

    let all_passed = solver_error.is_none() && certificates.iter().all(|c| c.pass);
    Ok(ScenarioOutcome { certificates, all_passed, solver_error })
}

/// The fully resolved configuration, one sorted `key = value` line each —
/// itself a valid scenario file.
pub fn manifest_lines(cfg: &ScenarioConfig) -> Vec<String> {
    let f = report::fmt17;
    let mut lines: Vec<String> = vec![
        format!("cfl_safety = {}", f(cfg.cfl_safety)),
        format!(
            "checks = {}",
            cfg.checks.iter().map(|c| c.as_str()).collect::<Vec<_>>().join(", ")
        ),
        format!("floor = {}", f(cfg.floor)),
        format!("grid.cells = {}", cfg.grid_cells),
        format!("grid.r_max = {}", f(cfg.grid_r_max)),
        format!("kappa = {}", f(cfg.kappa)),
        format!("n = {}", cfg.n),
        format!("p = {}", f(cfg.p)),
        format!("profile = {}", cfg.profile.name()),
        format!("scenario = {}", cfg.scenario),
        format!("t0 = {}", f(cfg.t0)),
        format!(
            "times = {}",
            cfg.times.iter().map(|&t| f(t)).collect::<Vec<_>>().join(", ")
        ),
    ];
    match &cfg.profile {
        ProfileKind::Gaussian { sigma } => lines.push(format!("sigma = {}", f(*sigma))),
        ProfileKind::UniformBall { radius } => lines.push(format!("radius = {}", f(*radius))),
        ProfileKind::TwoShell { inner, outer } => {
            lines.push(format!("shell1.center = {}", f(inner.center)));
            lines.push(format!("shell1.width = {}", f(inner.width)));
            lines.push(format!("shell1.weight = {}", f(inner.weight)));
            lines.push(format!("shell2.center = {}", f(outer.center)));
            lines.push(format!("shell2.width = {}", f(outer.width)));
            lines.push(format!("shell2.weight = {}", f(outer.weight)));
        }
        ProfileKind::Barenblatt => {}
    }
    for &check in &cfg.checks {
        let tol = cfg.tol_overrides.get(&check).copied().unwrap_or(default_tol(check));
        lines.push(format!("tol.{check} = {}", f(tol)));
    }
    lines.sort();
    lines
}

fn default_tol(check: CheckId) -> f64 {
    use crate::verify::*;
    match check {
        CheckId::Debruijn => TOL_DEBRUIJN,
        CheckId::MomentLaw => TOL_MOMENT_LAW,
        CheckId::LambdaMonotone => TOL_LAMBDA_MONOTONE,
        CheckId::Concavity => TOL_CONCAVITY,
        CheckId::Isoperimetric => TOL_ISOPERIMETRIC,
        CheckId::PowerLinearity => TOL_POWER_LINEARITY,
        CheckId::Sobolev => TOL_SOBOLEV,
        CheckId::BarenblattAttraction => TOL_ATTRACTION,
    }
}

const SWEEPABLE: [&str; 10] = [
    "n", "p", "kappa", "sigma", "radius", "t0", "cfl_safety", "floor", "grid.r_max", "grid.cells",
];

/// Expand `sweep.<key> = v1, v2, ...` entries into the cartesian product of
/// scenario configurations. Combination names append `-<key><value>` per
/// swept key (sorted by key); validation happens for every combination up
/// front so a bad corner fails the whole sweep before anything runs.
pub fn expand_sweep(map: &ConfigMap) -> Result<Vec<(String, ScenarioConfig)>> {
    let mut base = map.clone();
    let mut axes: Vec<(String, Vec<String>, usize)> = Vec::new();
    let sweep_keys: Vec<String> = map
        .keys()
        .filter(|k| k.starts_with("sweep."))
        .cloned()
        .collect();
    for key in &sweep_keys {
        let (value, line) = base.remove(key).unwrap();
        let target = key.strip_prefix("sweep.").unwrap().to_string();
        if !SWEEPABLE.contains(&target.as_str()) {
            return Err(Error::Config(format!(
                "{}: '{target}' is not sweepable (valid: {})",
                where_is(line),
                SWEEPABLE.join(", ")
            )));
        }
        if base.get(&target).is_some() {
            return Err(Error::Config(format!(
                "{}: '{target}' is set both directly and via '{key}'",
                where_is(line)
            )));
        }
        let values: Vec<String> =
            value.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
        if values.is_empty() {
            return Err(Error::Config(format!("{}: '{key}' has no values", where_is(line))));
        }
        axes.push((target, values, line));
    }
    if axes.is_empty() {
        return Err(Error::Config(
            "sweep needs at least one 'sweep.<key> = v1, v2, ...' axis".into(),
        ));
    }
    axes.sort_by(|a, b| a.0.cmp(&b.0));

    let base_name = base
        .get("scenario")
        .map(|(v, _)| v.clone())
        .ok_or_else(|| Error::Config("missing required key 'scenario'".into()))?;

    let mut combos: Vec<(String, ScenarioConfig)> = Vec::new();
    let mut index = vec![0usize; axes.len()];
    loop {
        let mut combo = base.clone();
        let mut name = base_name.clone();
        for (axis, &i) in axes.iter().zip(&index) {
            combo.insert(&axis.0, axis.1[i].clone());
            let short = axis.0.rsplit('.').next().unwrap();
            name = format!("{name}-{short}{}", axis.1[i]);
        }
        combo.insert("scenario", name.clone());
        let cfg = resolve_scenario(&combo)
            .map_err(|e| Error::Config(format!("sweep member '{name}': {e}")))?;
        combos.push((name, cfg));

        let mut k = axes.len();
        loop {
            if k == 0 {
                return finish_sweep(combos);
            }
            k -= 1;
            index[k] += 1;
            if index[k] < axes[k].1.len() {
                break;
            }
            index[k] = 0;
        }
    }
}

fn finish_sweep(combos: Vec<(String, ScenarioConfig)>) -> Result<Vec<(String, ScenarioConfig)>> {
    let mut names: Vec<&String> = combos.iter().map(|(n, _)| n).collect();
    names.sort();
    names.dedup();
    if names.len() != combos.len() {
        return Err(Error::Config("sweep produces duplicate scenario names".into()));
    }
    Ok(combos)
}

/// Run every sweep member (in parallel, capped by `ENTROFLOW_MAX_WORKERS`),
/// each into its own subdirectory, then write a summary sorted by scenario
/// name. Returns whether every certificate of every member passed.
pub fn run_sweep(map: &ConfigMap, out_dir: &Path) -> Result<bool> {
    let combos = expand_sweep(map)?;
    std::fs::create_dir_all(out_dir)?;

    let workers = std::env::var(MAX_WORKERS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&w| w >= 1)
        .unwrap_or_else(|| {
            std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
        })
        .min(combos.len());

    let next = std::sync::atomic::AtomicUsize::new(0);
    let results: Vec<std::sync::Mutex<Option<Result<ScenarioOutcome>>>> =
        combos.iter().map(|_| std::sync::Mutex::new(None)).collect();

    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if i >= combos.len() {
                    break;
                }
                let (name, cfg) = &combos[i];
                let outcome = run_scenario(cfg, &out_dir.join(name), RunMode::Verify);
                *results[i].lock().unwrap() = Some(outcome);
            });
        }
    });

    let mut rows: Vec<(String, String)> = Vec::new();
    let mut all_passed = true;
    for ((name, _), cell) in combos.iter().zip(&results) {
        let outcome = cell.lock().unwrap().take().expect("worker filled every slot");
        match outcome {
            Ok(o) => {
                let failed = o.certificates.iter().filter(|c| !c.pass).count();
                let status = if o.all_passed { "pass" } else { "fail" };
                all_passed &= o.all_passed;
                rows.push((
                    name.clone(),
                    format!("{status},{},{failed}", o.certificates.len()),
                ));
            }
            Err(e) => return Err(Error::Config(format!("sweep member '{name}': {e}"))),
        }
    }
    rows.sort_by(|a, b| a.0.cmp(&b.0));
    let mut lines = vec!["scenario,status,certificates,failed".to_string()];
    lines.extend(rows.into_iter().map(|(n, r)| format!("{n},{r}")));
    std::fs::write(out_dir.join("summary.csv"), lines.join("\n") + "\n")?;
    Ok(all_passed)
}
