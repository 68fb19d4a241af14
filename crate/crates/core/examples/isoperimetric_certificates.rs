//! The entropy isoperimetric inequality N_p * I_p >= gamma_{n,p} as machine
//! certificates: one per density, with slack, tolerance, and a dilation
//! residual showing the product really is scale-invariant.
//!
//!     cargo run --example isoperimetric_certificates

use entroflow::*;

fn main() {
    let n = 1;
    let p = 2.0;
    let grid = RadialGrid::new(n, 16.0, 8000).unwrap();
    let bgrid = RadialGrid::new(n, 3.0, 4000).unwrap();

    let fields: Vec<(&str, DensityField)> = vec![
        ("barenblatt (equality)", barenblatt_profile(n, p, &bgrid).unwrap().1),
        ("gaussian", gaussian_profile(n, 1.0, &grid).unwrap()),
        ("uniform ball", uniform_ball_profile(n, 1.0, &grid).unwrap()),
        (
            "two-shell",
            two_shell_profile(
                n,
                Shell { center: 1.0, width: 0.3, weight: 1.0 },
                Shell { center: 3.0, width: 0.5, weight: 0.7 },
                &grid,
            )
            .unwrap(),
        ),
    ];

    for (label, f) in &fields {
        let cert = check_isoperimetric(f, p, None).unwrap();
        println!(
            "{label:<22} N_p*I_p = {:>12.6}  gamma = {:.6}  slack = {:+.3e}  {}",
            cert.lhs,
            cert.rhs,
            cert.slack,
            if cert.pass { "pass" } else { "FAIL" }
        );
        println!("  {}", cert.notes);
    }
    println!("\nserialized certificate for the equality case:");
    let cert = check_isoperimetric(&fields[0].1, p, None).unwrap();
    println!("{}", serde_json::to_string_pretty(&cert).unwrap());
}
