//! Thin command-line front end. All work happens in the library; this file
//! only parses arguments, loads the config, and maps outcomes to exit codes:
//! 0 = every check passed, 1 = a check failed or the solver aborted,
//! 2 = the configuration or invocation was invalid.

use clap::{Args, Parser, Subcommand};
use entroflow::scenario::{resolve_scenario, run_scenario, run_sweep, ConfigMap, RunMode};
use entroflow::report::run_constants_table;
use entroflow::Error;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "entroflow",
    version,
    about = "Entropy functionals, nonlinear diffusion, and inequality certificates on radial grids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve the configured initial profile and write the time series
    Solve(RunArgs),
    /// Solve, then run the configured checks and write certificates
    Verify(RunArgs),
    /// Tabulate printed vs corrected vs quadrature sharp constants
    Constants(RunArgs),
    /// Run the cartesian product of sweep.<key> axes, one scenario each
    Sweep(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Flat key = value configuration file
    #[arg(long)]
    config: PathBuf,
    /// Override or add a config entry (repeatable, later wins)
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Output directory (created if missing)
    #[arg(long)]
    out: PathBuf,
}

fn load_config(args: &RunArgs) -> Result<ConfigMap, Error> {
    let text = std::fs::read_to_string(&args.config).map_err(|e| {
        Error::Config(format!("cannot read config '{}': {e}", args.config.display()))
    })?;
    let mut map = ConfigMap::parse(&text)?;
    map.apply_overrides(&args.set)?;
    Ok(map)
}

fn run_single(args: &RunArgs, mode: RunMode) -> Result<bool, Error> {
    let map = load_config(args)?;
    let cfg = resolve_scenario(&map)?;
    let outcome = run_scenario(&cfg, &args.out, mode)?;
    if let Some(reason) = &outcome.solver_error {
        eprintln!("scenario '{}': solver abort: {reason}", cfg.scenario);
    }
    println!(
        "scenario '{}': wrote {} ({} snapshots recorded)",
        cfg.scenario,
        args.out.display(),
        cfg.times.len() + 1,
    );
    for cert in &outcome.certificates {
        let status = if cert.pass { "pass" } else { "FAIL" };
        println!("  [{status}] {:<22} slack = {:+.3e}  tol = {:.1e}", cert.check_id, cert.slack, cert.tol);
    }
    Ok(outcome.all_passed)
}

fn run_constants(args: &RunArgs) -> Result<bool, Error> {
    let map = load_config(args)?;
    let rows = run_constants_table(&map, &args.out)?;
    let flagged = rows.iter().filter(|r| r.flagged).count();
    println!(
        "wrote {} rows to {} ({flagged} flagged)",
        rows.len(),
        args.out.join("constants.csv").display()
    );
    for r in rows.iter().filter(|r| r.flagged) {
        println!(
            "  flagged {} (n = {}, p = {}): printed {:.6} vs corrected {:.6}",
            r.quantity,
            r.n,
            r.p.unwrap_or(f64::NAN),
            r.printed.unwrap_or(f64::NAN),
            r.corrected
        );
    }
    Ok(true)
}

fn run(args: &RunArgs, which: fn(&RunArgs) -> Result<bool, Error>) -> i32 {
    match which(args) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match &cli.command {
        Command::Solve(args) => run(args, |a| run_single(a, RunMode::Solve)),
        Command::Verify(args) => run(args, |a| run_single(a, RunMode::Verify)),
        Command::Constants(args) => run(args, run_constants),
        Command::Sweep(args) => run(args, |a| {
            let map = load_config(a)?;
            let ok = run_sweep(&map, &a.out)?;
            println!("sweep summary: {}", a.out.join("summary.csv").display());
            Ok(ok)
        }),
    };
    std::process::exit(code);
}
