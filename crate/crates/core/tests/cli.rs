//! End-to-end tests of the `entroflow` binary: exit codes, artifact layout,
//! determinism, and the config error surface.

use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_entroflow");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

const EQUALITY_CFG: &str = "\
# porous-medium equality case: the profile saturates N_p * I_p = gamma
scenario = barenblatt-equality
n = 1
p = 2
profile = barenblatt
t0 = 1.0
times = 1.05, 1.1
grid.r_max = 3.2
grid.cells = 2000
checks = isoperimetric, moment_law, debruijn, lambda_monotone
";

#[test]
fn usage_and_missing_config_exit_2() {
    let out = run(&["verify"]);
    assert_eq!(out.status.code(), Some(2), "clap usage error");
    let out = run(&["verify", "--config", "/nonexistent.cfg", "--out", "/tmp"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("cannot read config"), "{}", stderr(&out));
}

#[test]
fn malformed_config_reports_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "bad.cfg", "scenario = x\nn = 1\nnot a pair\n");
    let out = run(&["verify", "--config", &cfg, "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));
}

#[test]
fn moment_dependent_check_outside_range_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "lowp.cfg",
        "scenario = lowp\nn = 1\np = 0.3\nprofile = gaussian\ngrid.r_max = 12\n\
         grid.cells = 400\ntimes = 0.1, 0.2\nchecks = lambda_monotone\n",
    );
    let out = run(&["verify", "--config", &cfg, "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let msg = stderr(&out);
    assert!(msg.contains("lambda_monotone") && msg.contains("p > n/(n+2)"), "{msg}");
}

#[test]
fn equality_scenario_passes_and_reruns_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "eq.cfg", EQUALITY_CFG);
    let out_a = dir.path().join("a");
    let out_b = dir.path().join("b");
    let run_a = run(&["verify", "--config", &cfg, "--out", out_a.to_str().unwrap()]);
    assert_eq!(run_a.status.code(), Some(0), "{}", stderr(&run_a));

    let certs: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out_a.join("certificates.json")).unwrap())
            .unwrap();
    let certs = certs.as_array().unwrap();
    assert_eq!(certs.len(), 4);
    assert!(certs.iter().all(|c| c["pass"].as_bool().unwrap()));
    let iso = certs.iter().find(|c| c["check_id"] == "isoperimetric").unwrap();
    let lhs = iso["lhs"].as_f64().unwrap();
    let gamma = 125.0 / 9.0;
    assert!(
        (lhs - gamma).abs() / gamma < 1e-3,
        "equality case should measure the sharp constant: {lhs} vs {gamma}"
    );

    let ts = std::fs::read_to_string(out_a.join("timeseries.csv")).unwrap();
    assert!(ts.starts_with("t,mass,E,R_p,N_p,I_p,Lambda_p\n"));
    assert_eq!(ts.lines().count(), 4, "header plus one row per snapshot");

    let run_b = run(&["verify", "--config", &cfg, "--out", out_b.to_str().unwrap()]);
    assert_eq!(run_b.status.code(), Some(0));
    for name in ["timeseries.csv", "certificates.json", "manifest.txt"] {
        assert_eq!(
            std::fs::read(out_a.join(name)).unwrap(),
            std::fs::read(out_b.join(name)).unwrap(),
            "{name} must be byte-identical across reruns"
        );
    }
}

#[test]
fn solve_writes_the_time_series_but_no_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "eq.cfg", EQUALITY_CFG);
    let out_dir = dir.path().join("solve");
    let out = run(&["solve", "--config", &cfg, "--out", out_dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(out_dir.join("timeseries.csv").exists());
    assert!(out_dir.join("manifest.txt").exists());
    assert!(!out_dir.join("certificates.json").exists());
}

#[test]
fn set_overrides_win_and_land_in_the_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "heat.cfg",
        "scenario = heat\nn = 1\np = 1\nprofile = gaussian\nsigma = 1\n\
         grid.r_max = 12\ngrid.cells = 300\ntimes = 0.1, 0.2\n",
    );
    let out_dir = dir.path().join("o");
    let out = run(&[
        "solve", "--config", &cfg, "--set", "sigma=2", "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let manifest = std::fs::read_to_string(out_dir.join("manifest.txt")).unwrap();
    assert!(manifest.contains("sigma = 2.0000000000000000e0"), "{manifest}");

    let out = run(&["solve", "--config", &cfg, "--set", "oops", "--out", "/tmp/x"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("KEY=VALUE"), "{}", stderr(&out));
}

#[test]
fn failing_check_exits_1_with_the_certificate_on_disk() {
    let dir = tempfile::tempdir().unwrap();
    // snapshots 1.0 apart make the centered dR/dt estimate honestly bad
    let cfg = write(
        dir.path(),
        "coarse.cfg",
        "scenario = coarse-debruijn\nn = 1\np = 1\nprofile = gaussian\n\
         grid.r_max = 12\ngrid.cells = 400\ntimes = 0.5, 1.5, 2.5\nchecks = debruijn\n",
    );
    let out_dir = dir.path().join("o");
    let out = run(&["verify", "--config", &cfg, "--out", out_dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "{}", stderr(&out));
    let certs: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out_dir.join("certificates.json")).unwrap())
            .unwrap();
    assert_eq!(certs[0]["pass"], serde_json::Value::Bool(false));
    assert!(certs[0]["slack"].as_f64().unwrap() < -2e-2);
}

#[test]
fn sweep_expands_sorts_and_propagates_failure() {
    let dir = tempfile::tempdir().unwrap();
    // kappa = 2 doubles the flow speed, so the fixed snapshot spacing is too
    // coarse for the centered difference there: those members fail honestly
    let cfg = write(
        dir.path(),
        "sweep.cfg",
        "scenario = heat-sweep\nn = 1\np = 1\nprofile = gaussian\ngrid.r_max = 12\n\
         grid.cells = 300\ntimes = 0.1, 0.2, 0.3\nchecks = debruijn, moment_law\n\
         sweep.sigma = 0.8, 1.0\nsweep.kappa = 1, 2\n",
    );
    let out_dir = dir.path().join("sw");
    let out = run(&["sweep", "--config", &cfg, "--out", out_dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "{}", stderr(&out));
    let summary = std::fs::read_to_string(out_dir.join("summary.csv")).unwrap();
    let lines: Vec<&str> = summary.lines().collect();
    assert_eq!(lines[0], "scenario,status,certificates,failed");
    assert_eq!(
        lines[1..],
        [
            "heat-sweep-kappa1-sigma0.8,pass,2,0",
            "heat-sweep-kappa1-sigma1.0,pass,2,0",
            "heat-sweep-kappa2-sigma0.8,fail,2,1",
            "heat-sweep-kappa2-sigma1.0,fail,2,1",
        ]
    );
    for name in ["heat-sweep-kappa1-sigma0.8", "heat-sweep-kappa2-sigma1.0"] {
        assert!(out_dir.join(name).join("certificates.json").exists());
        assert!(out_dir.join(name).join("timeseries.csv").exists());
    }
}

#[test]
fn sweep_with_an_invalid_member_exits_2_before_running() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "sweep.cfg",
        "scenario = s\nn = 1\nprofile = gaussian\ngrid.r_max = 12\ngrid.cells = 300\n\
         times = 0.1, 0.2\nchecks = lambda_monotone\nsweep.p = 0.3, 1\n",
    );
    let out_dir = dir.path().join("sw");
    let out = run(&["sweep", "--config", &cfg, "--out", out_dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("sweep member 's-p0.3'"), "{}", stderr(&out));
    assert!(!out_dir.exists(), "nothing may run when any member is invalid");
}

#[test]
fn constants_table_records_printed_corrected_and_quadrature() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.cfg", "n_list = 1\np_list = 0.5, 2\n");
    let out_dir = dir.path().join("ct");
    let out = run(&["constants", "--config", &cfg, "--out", out_dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let csv = std::fs::read_to_string(out_dir.join("constants.csv")).unwrap();
    let rows: Vec<Vec<&str>> = csv.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 2);

    // p = 1/2: printed and corrected agree at 4*pi^2; the quadrature column
    // carries the positivity-mask + tail bias of the pipeline (a few 1e-3)
    let half = &rows[0];
    let four_pi2 = 4.0 * std::f64::consts::PI.powi(2);
    assert_eq!(half[3], half[4], "no misprint at p < 1");
    assert!((half[4].parse::<f64>().unwrap() - four_pi2).abs() < 1e-12);
    assert!((half[5].parse::<f64>().unwrap() - four_pi2).abs() / four_pi2 < 5e-3);
    assert_eq!(half[7], "false");

    // p = 2: printed disagrees with corrected by ~39% and the row is flagged;
    // quadrature sides with the corrected value
    let two = &rows[1];
    let printed: f64 = two[3].parse().unwrap();
    let corrected: f64 = two[4].parse().unwrap();
    let quadrature: f64 = two[5].parse().unwrap();
    assert!((printed - 19.2774).abs() / 19.2774 < 1e-3);
    assert!((corrected - 125.0 / 9.0).abs() < 1e-12);
    assert!((quadrature - corrected).abs() / corrected < 1e-3);
    assert!(two[6].parse::<f64>().unwrap() > 0.38);
    assert_eq!(two[7], "true");

    let cfg = write(dir.path(), "c2.cfg", "n_list = 1\np_list = 0.2\n");
    let out = run(&["constants", "--config", &cfg, "--out", out_dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("no admissible"), "{}", stderr(&out));
}
