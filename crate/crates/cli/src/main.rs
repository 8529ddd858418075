//! Command-line front end: verification suites, sharp constants, projections,
//! the boundary counterexample, and parameter sweeps, all with deterministic
//! machine-readable output.

mod commands;
mod pool;
mod spec_file;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "bergman",
    about = "Verification toolkit for Bergman-projection integral-mean bounds",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate sharp constants (kernel-mean, C1, C2, C3) with branch info.
    Constants(commands::ConstantsArgs),
    /// Run verification suites; exit 0 only if every check passes.
    Verify(commands::VerifyArgs),
    /// Project a function-spec file and report Taylor coefficients.
    Project(commands::ProjectArgs),
    /// Build the boundary counterexample and its divergence certificate.
    Counterexample(commands::CounterexampleArgs),
    /// Cartesian parameter sweep over one bound check.
    Sweep(commands::SweepArgs),
}

fn main() {
    // Die quietly on closed pipes (e.g. `bergman ... | head`).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Constants(args) => commands::run_constants(args),
        Command::Verify(args) => commands::run_verify(args),
        Command::Project(args) => commands::run_project(args),
        Command::Counterexample(args) => commands::run_counterexample(args),
        Command::Sweep(args) => commands::run_sweep(args),
    };
    std::process::exit(code);
}
