//! The self-similar profile (C - lambda*|x|^2)_+^{1/(p-1)}: closed-form
//! normalization, support or tail radius, and exact functional values against
//! their quadrature counterparts on a grid.
//!
//!     cargo run --example barenblatt_profile [n] [p]

use entroflow::*;

fn main() {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map(|s| s.parse().unwrap()).unwrap_or(1);
    let p: f64 = args.next().map(|s| s.parse().unwrap()).unwrap_or(2.0);

    let spec = BarenblattSpec::new(n, p).unwrap();
    println!("profile at n = {n}, p = {p}");
    println!("  mu          = {:.12}", spec.mu());
    println!("  lambda      = {:.12}", spec.lam());
    println!("  C           = {:.12}", spec.closed_form_c());
    match spec.support_radius() {
        Some(r) => println!("  support     = [0, {r:.6}] (compact, p > 1)"),
        None => println!(
            "  tail        = algebraic, mass beyond r = 50 is {:.3e}",
            spec.tail_mass(50.0)
        ),
    }

    let r_max = spec.suggested_r_max(1e-8);
    let cells = ((r_max / 5e-4).ceil() as usize).clamp(4000, 200_000);
    let grid = RadialGrid::new(n, r_max, cells).unwrap();
    let (_, field) = barenblatt_profile(n, p, &grid).unwrap();
    let report = FunctionalReport::compute(&field, p).unwrap();

    println!("\n  grid: r_max = {r_max:.4}, {cells} cells");
    println!("  {:<22} {:>18} {:>18}", "", "exact", "quadrature");
    for (label, exact, quad) in [
        ("mass", 1.0, field.mass()),
        ("second moment E", spec.exact_second_moment().unwrap(), report.second_moment),
        ("Renyi entropy R_p", spec.exact_renyi().unwrap(), report.renyi),
        ("entropy power N_p", spec.exact_entropy_power().unwrap(), report.power),
        ("Fisher I_p", spec.exact_fisher(), report.fisher),
        ("Lambda_p", spec.exact_lambda().unwrap(), report.lambda),
    ] {
        println!("  {label:<22} {exact:>18.12} {quad:>18.12}");
    }

    let product = report.power * report.fisher;
    let gamma = gamma_constant(n, p).unwrap();
    println!("\n  N_p * I_p = {product:.10}   gamma = {gamma:.10}   (equality case)");
}
