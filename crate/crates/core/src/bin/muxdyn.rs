use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use muxdyn::cli::{cmd_analyze, cmd_bidirectional, cmd_simulate, cmd_validate};
use muxdyn::dynamics::{DEFAULT_TOL, DEFAULT_T_MAX};
use muxdyn::io::RunConfig;

/// Opinion dynamics on two-layer multiplex networks.
#[derive(Parser)]
#[command(name = "muxdyn", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the structural assumptions; exit 1 on any violation.
    Validate { network: PathBuf },
    /// Print the predicted consensus, closed class, π and q as JSON.
    Analyze { network: PathBuf },
    /// Run the dynamics, write a CSV trajectory and print a JSON summary.
    Simulate {
        network: PathBuf,
        #[arg(long, default_value_t = DEFAULT_T_MAX)]
        t_max: usize,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Add the calibrated convergence-rate envelope as a `bound` column.
        #[arg(long)]
        emit_bound: bool,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write the bidirectional counterpart (leader in-edges excluded).
    Bidirectional {
        network: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("MUXDYN_LOG", "error")).init();
    let cli = Cli::parse();
    let output = match cli.command {
        Command::Validate { network } => cmd_validate(&network),
        Command::Analyze { network } => cmd_analyze(&network),
        Command::Simulate { network, t_max, tol, emit_bound, out, seed } => {
            if t_max < 1 || tol.is_nan() || tol <= 0.0 {
                eprintln!("error: --t-max must be at least 1 and --tol positive");
                return ExitCode::from(2);
            }
            let config = RunConfig { t_max, tol, emit_bound, output_path: out, seed };
            cmd_simulate(&network, &config)
        }
        Command::Bidirectional { network, out } => cmd_bidirectional(&network, out.as_deref()),
    };
    print!("{}", output.stdout);
    eprint!("{}", output.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(output.code as u8)
}
