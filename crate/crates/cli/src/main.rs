use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ss_cli::{commands, CliError, RunConfig};

#[derive(Parser)]
#[command(
    name = "ssasym",
    version,
    about = "Scattering data, long-time asymptotics and reference simulations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Run configuration (`key = value` lines)
    #[arg(long)]
    config: PathBuf,
    /// Output directory, created if missing
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Reflection table and symmetry residuals
    Scatter(Common),
    /// Leading-order asymptotic curve along the configured ray
    Asym(Common),
    /// Pseudospectral snapshots at the configured times
    Simulate(Common),
    /// Simulation versus leading term, with the fitted error exponent
    Compare(Common),
    /// Jump residuals of the model problem over a (nu, r) grid
    Modelcheck(Common),
    /// Sign of Re(phase) on a grid in the k-plane
    Signature(Common),
}

type Handler = fn(&RunConfig, &std::path::Path) -> ss_cli::Result<Vec<String>>;

fn run(cli: Cli) -> Result<Vec<String>, CliError> {
    let (common, f): (&Common, Handler) = match &cli.command {
        Command::Scatter(c) => (c, commands::scatter),
        Command::Asym(c) => (c, commands::asym),
        Command::Simulate(c) => (c, commands::simulate_cmd),
        Command::Compare(c) => (c, commands::compare),
        Command::Modelcheck(c) => (c, commands::modelcheck),
        Command::Signature(c) => (c, commands::signature),
    };
    let cfg = RunConfig::from_file(&common.config)?;
    std::fs::create_dir_all(&common.out).map_err(|e| CliError::io(&common.out, e))?;
    f(&cfg, &common.out)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(lines) => {
            for l in lines {
                println!("{l}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
