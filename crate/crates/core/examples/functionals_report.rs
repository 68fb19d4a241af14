//! Entropy functionals on a few radial densities, plus the dilation laws:
//! mass-preserving rescaling a^n f(ax) shifts R_p by -n*log(a), scales E by
//! a^-2, and leaves Lambda_p and N_p*I_p unchanged.
//!
//!     cargo run --example functionals_report

use entroflow::*;

fn main() {
    let n = 1;
    let p = 2.0;
    let grid = RadialGrid::new(n, 16.0, 8000).unwrap();

    let fields: Vec<(&str, DensityField)> = vec![
        ("gaussian sigma=1", gaussian_profile(n, 1.0, &grid).unwrap()),
        ("uniform ball r=1", uniform_ball_profile(n, 1.0, &grid).unwrap()),
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

    println!("order p = {p}, dimension n = {n}");
    println!(
        "{:<18} {:>10} {:>10} {:>10} {:>10} {:>10}",
        "density", "R_p", "N_p", "I_p", "E", "Lambda_p"
    );
    for (label, f) in &fields {
        let r = FunctionalReport::compute(f, p).unwrap();
        println!(
            "{label:<18} {:>10.5} {:>10.5} {:>10.5} {:>10.5} {:>10.5}",
            r.renyi, r.power, r.fisher, r.second_moment, r.lambda
        );
    }

    // dilate the gaussian by a = 2 and watch what moves and what does not
    let f = &fields[0].1;
    let a = 2.0;
    let fa = f.dilate(a).unwrap();
    let before = FunctionalReport::compute(f, p).unwrap();
    let after = FunctionalReport::compute(&fa, p).unwrap();
    println!("\ndilation a = {a} of the gaussian:");
    println!(
        "  R_p {:.6} -> {:.6}   (shift -n*ln a = {:.6})",
        before.renyi,
        after.renyi,
        -(n as f64) * a.ln()
    );
    println!(
        "  E   {:.6} -> {:.6}   (scale a^-2 = {:.6})",
        before.second_moment,
        after.second_moment,
        a.powi(-2)
    );
    println!("  Lambda_p {:.8} -> {:.8}   (invariant)", before.lambda, after.lambda);
    println!(
        "  N_p*I_p  {:.8} -> {:.8}   (invariant)",
        before.power * before.fisher,
        after.power * after.fisher
    );
}
