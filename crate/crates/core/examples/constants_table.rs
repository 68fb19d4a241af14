//! Sharp constants at a glance: the closed-form gamma and Sobolev constants,
//! the printed variants where the classical tables disagree, and a quadrature
//! re-measurement of N_p * I_p on the extremal profile.
//!
//!     cargo run --example constants_table

use entroflow::constants_rows;

fn main() {
    let rows = constants_rows(&[1, 2, 3], &[0.5, 1.0, 1.5, 2.0]).unwrap();
    println!(
        "{:<8} {:>2} {:>6}  {:>14} {:>14} {:>14}  {:>9}  flag",
        "quantity", "n", "p", "printed", "corrected", "quadrature", "spread"
    );
    for r in &rows {
        let opt = |x: Option<f64>| x.map(|v| format!("{v:14.8}")).unwrap_or_else(|| " ".repeat(14));
        println!(
            "{:<8} {:>2} {:>6}  {} {:14.8} {}  {:>9}  {}",
            r.quantity,
            r.n,
            r.p.map(|p| format!("{p:.3}")).unwrap_or_default(),
            opt(r.printed),
            r.corrected,
            opt(r.quadrature),
            r.spread.map(|s| format!("{s:.2e}")).unwrap_or_default(),
            if r.flagged { "<-- printed and corrected disagree" } else { "" },
        );
    }
    println!();
    println!("flagged rows: the classical table value (printed) and the closed form this");
    println!("library derives (corrected) differ by more than 1%; the quadrature column");
    println!("re-measures the extremal product numerically and sides with the corrected value.");
}
