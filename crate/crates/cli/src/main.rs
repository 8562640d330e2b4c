//! `coarse`: run coarse-geometry constructions and checks on JSON instances.
//!
//! Exit codes: 0 on success, 1 when a certificate fails, 2 on usage or
//! validation errors.

mod commands;
mod gen;
mod load;
mod report;

use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use crate::commands::{Command, Context};
use crate::load::Failure;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "coarse", version, about = "Coarse geometry on finite metric spaces")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Comparison tolerance for distances.
    #[arg(long, global = true, default_value_t = coarse_core::metric::DEFAULT_TOL)]
    tol: f64,
    /// Seed for every sampled search.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if !(cli.tol >= 0.0 && cli.tol.is_finite()) {
        eprintln!("error: --tol must be a nonnegative number");
        return ExitCode::from(2);
    }
    let ctx = Context { tol: cli.tol, seed: cli.seed };
    match cli.command.run(&ctx) {
        Ok(report) => {
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            match cli.format {
                Format::Text => println!("{}", report.render_text()),
                Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("reports serialize")),
            }
            ExitCode::from(report.exit_code())
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Bug(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
