use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use nehari_cli::config::CONFIG_HELP;
use nehari_cli::{parse_config, run, CliError, Command, EXIT_USAGE};

#[derive(Parser)]
#[command(name = "nehari", version, about = "Radial-energy fixed-point search in function cones", after_help = CONFIG_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Sample the radial potential and energy along seeded cone directions.
    Profile(Args),
    /// Search the manifold of radial maximizers for a fixed point.
    Solve(Args),
    /// Check the structural conditions on sampled directions.
    Verify(Args),
    /// Solve in each annulus of `run.annuli`.
    Scan(Args),
}

#[derive(clap::Args)]
#[command(after_help = CONFIG_HELP)]
struct Args {
    /// TOML configuration file.
    #[arg(long)]
    config: PathBuf,
    /// Output directory, created if missing.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Overrides `run.seed`.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads for sampled checks and scans (default: all cores).
    #[arg(long)]
    workers: Option<usize>,
}

fn execute(command: Command, args: Args) -> Result<i32, CliError> {
    if let Some(n) = args.workers {
        if n == 0 {
            return Err(CliError::Workers {
                workers: 0,
                reason: "need at least one".into(),
            });
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Workers {
                workers: n,
                reason: e.to_string(),
            })?;
    }
    let mut cfg = parse_config(&args.config)?;
    if let Some(seed) = args.seed {
        cfg.run.seed = seed;
    }
    let outcome = run(&cfg, command, &args.out)?;
    println!("{}: {}", command.name(), outcome.summary);
    for f in &outcome.files {
        println!("  wrote {}", f.display());
    }
    Ok(outcome.exit_code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let (command, args) = match cli.command {
        Sub::Profile(a) => (Command::Profile, a),
        Sub::Solve(a) => (Command::Solve, a),
        Sub::Verify(a) => (Command::Verify, a),
        Sub::Scan(a) => (Command::Scan, a),
    };
    match execute(command, args) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
