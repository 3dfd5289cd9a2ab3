use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qmfs_cli::{execute, log_line, Command, Invocation};

#[derive(Parser)]
#[command(name = "qmfs", version, about = "Quaternionic MFS for Maxwell problems in chiral media")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Solve for the single N of the config.
    Solve(Common),
    /// Solve for every N of the config.
    Sweep(Common),
    /// Run the verification checks.
    Verify(Common),
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    output: Option<PathBuf>,
    /// Reserved; results do not depend on it.
    #[arg(long)]
    seed: Option<u64>,
    /// Write measured wall time to the CSV (breaks byte-identical reruns).
    #[arg(long)]
    timing: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, args) = match cli.command {
        Sub::Solve(a) => (Command::Solve, a),
        Sub::Sweep(a) => (Command::Sweep, a),
        Sub::Verify(a) => (Command::Verify, a),
    };
    let inv = Invocation { command, config: args.config, output: args.output, seed: args.seed, timing: args.timing };
    let mut stdout = std::io::stdout().lock();
    let mut stderr = std::io::stderr().lock();
    match execute(&inv, &mut stdout, &mut stderr) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            log_line(&mut stderr, "error", "failed", &[("error", e.name().to_string()), ("message", e.to_string())]);
            ExitCode::FAILURE
        }
    }
}
