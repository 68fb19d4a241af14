//! Heat flow (p = 1): a Gaussian stays Gaussian with variance sigma + 2*kappa*t,
//! so every column of the time series has a closed form to compare against.
//!
//!     cargo run --example heat_flow

use entroflow::*;

fn main() {
    let n = 1;
    let sigma0 = 1.0;
    let grid = RadialGrid::new(n, 12.0, 1200).unwrap();
    let f0 = gaussian_profile(n, sigma0, &grid).unwrap();
    let cfg = SolverConfig {
        snapshot_times: (1..=6).map(|k| 0.1 * k as f64).collect(),
        ..Default::default()
    };
    let traj = evolve(&f0, 1.0, &cfg).unwrap();

    println!(
        "{:>5} {:>12} {:>12} {:>12} {:>12} {:>12}",
        "t", "E", "E exact", "R_1", "R_1 exact", "L1 vs exact"
    );
    let two_pi_e = 2.0 * std::f64::consts::PI * std::f64::consts::E;
    for s in &traj.snapshots {
        let sigma = sigma0 + 2.0 * s.time;
        let exact = gaussian_profile(n, sigma, &grid).unwrap();
        let l1 = s.field.l1_distance(&exact).unwrap();
        println!(
            "{:>5.2} {:>12.8} {:>12.8} {:>12.8} {:>12.8} {:>12.3e}",
            s.time,
            s.report.second_moment,
            (n as f64) * sigma,
            s.report.renyi,
            0.5 * (n as f64) * (two_pi_e * sigma).ln(),
            l1
        );
    }

    let db = check_debruijn(&traj, None).unwrap();
    println!("\ndR_1/dt vs kappa*I_1: worst relative mismatch {:.3e} -> {}", db.lhs, verdict(&db));
    let mm = check_moment_law(&traj, None).unwrap();
    println!("dE/dt vs 2n*kappa*mass: worst relative mismatch {:.3e} -> {}", mm.lhs, verdict(&mm));
}

fn verdict(c: &Certificate) -> &'static str {
    if c.pass {
        "pass"
    } else {
        "FAIL"
    }
}
