//! The sharp Sobolev constant as the p = (n-1)/n endpoint of the entropy
//! family: the Rayleigh ratio of g = f^{1/2*} meets S_n exactly when f is the
//! fast-diffusion profile, and strictly exceeds it otherwise.
//!
//!     cargo run --example sobolev_endpoint

use entroflow::*;

fn main() {
    let n = 3;
    let s3 = sobolev_constant(n).unwrap();
    println!("S_{n} = {s3:.10}");
    let nf = n as f64;
    let via_gamma = ((nf - 2.0) / (2.0 * nf - 2.0)).powi(2)
        * gamma_constant(n, (nf - 1.0) / nf).unwrap();
    println!("identity check: ((n-2)/(2n-2))^2 * gamma_(n,(n-1)/n) = {via_gamma:.10}\n");

    // the extremal has an algebraic tail; the Dirichlet integral converges
    // slowly, so the grid reaches far out
    let grid = RadialGrid::new(n, 5000.0, 200_000).unwrap();
    let (_, f) = barenblatt_profile(n, (nf - 1.0) / nf, &grid).unwrap();
    let cert = check_sobolev(&f, None).unwrap();
    println!("extremal profile: ratio = {:.6}  (S_3 = {:.6})  {}", cert.lhs, cert.rhs, ok(&cert));
    println!("  {}", cert.notes);

    let ggrid = RadialGrid::new(n, 16.0, 8000).unwrap();
    let gauss = gaussian_profile(n, 1.0, &ggrid).unwrap();
    let gcert = check_sobolev(&gauss, None).unwrap();
    println!(
        "gaussian:         ratio = {:.6}  ({:+.1}% above the sharp constant)",
        gcert.lhs,
        100.0 * (gcert.lhs / s3 - 1.0)
    );
}

fn ok(c: &Certificate) -> &'static str {
    if c.pass {
        "pass"
    } else {
        "FAIL"
    }
}
