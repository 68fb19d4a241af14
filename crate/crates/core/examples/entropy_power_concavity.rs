//! Concavity of the entropy power: along any flow N_p(t) bends downward, and
//! along the exact self-similar family it is exactly linear — the boundary
//! case of concavity.
//!
//!     cargo run --example entropy_power_concavity

use entroflow::*;

fn main() {
    // a deliberately lumpy initial condition under heat flow
    let grid = RadialGrid::new(1, 16.0, 1200).unwrap();
    let f0 = two_shell_profile(
        1,
        Shell { center: 1.0, width: 0.3, weight: 1.0 },
        Shell { center: 3.0, width: 0.5, weight: 0.7 },
        &grid,
    )
    .unwrap();
    let cfg = SolverConfig {
        snapshot_times: (1..=12).map(|k| 0.05 * k as f64).collect(),
        ..Default::default()
    };
    let traj = evolve(&f0, 1.0, &cfg).unwrap();

    println!("{:>5} {:>12} {:>14}", "t", "N_1", "2nd difference");
    let s = &traj.snapshots;
    for k in 0..s.len() {
        let d2 = if k >= 1 && k + 1 < s.len() {
            format!("{:+.6e}", s[k + 1].report.power - 2.0 * s[k].report.power + s[k - 1].report.power)
        } else {
            String::new()
        };
        println!("{:>5.2} {:>12.6} {:>14}", s[k].time, s[k].report.power, d2);
    }
    let cert = check_concavity(&traj, None).unwrap();
    println!(
        "concavity: {} ({})",
        if cert.pass { "pass" } else { "FAIL" },
        cert.notes
    );

    // the linear boundary case on exact snapshots
    let spec = BarenblattSpec::new(1, 2.0).unwrap();
    let sgrid = RadialGrid::new(1, 3.8, 4000).unwrap();
    let cert = check_power_linearity(&spec, &[1.0, 2.0, 3.0, 4.0], &sgrid, None).unwrap();
    println!("\nself-similar N_p(t) linearity: {}", cert.notes);
}
