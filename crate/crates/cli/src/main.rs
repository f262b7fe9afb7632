mod commands;
mod config;
mod output;

use clap::{Parser, Subcommand};
use commands::{CompareArgs, OracleArgs, PMeanArgs, SolveArgs, VerifyArgs};
use output::{Format, Status};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;

/// Variational p-means, their asymptotic expansions and p-harmonious grid solves.
#[derive(Debug, Parser)]
#[command(name = "amvp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// File of `key = value` lines; keys are long flag names.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand)]
enum Command {
    /// p-mean of a catalog field over a ball, sphere or heat ball.
    Pmean(PMeanArgs),
    /// Fit the small-radius expansion of a mean and compare it with theory.
    Verify(VerifyArgs),
    /// Compare quadrature against the closed-form moment integrals.
    OracleCheck(OracleArgs),
    /// Solve the mean value problem on a planar grid.
    Solve(SolveArgs),
    /// Evaluate the variational and explicit means, the continuity contrast
    /// and the randomized monotonicity searches.
    CompareMeans(CompareArgs),
}

fn status_of(e: &amvp_core::Error) -> Status {
    use amvp_core::Error::*;
    match e {
        Truncation { .. } | NonFiniteValue { .. } | DerivativeCheck(_) | Numerical(_) | Io(_) | Json(_) | Csv(_) => {
            Status::NumericalFailure
        }
        _ => Status::ConfigError,
    }
}

fn run<C: Serialize, R: Serialize>(cli: &Cli, report: amvp_core::Result<output::Report<C, R>>) -> Status {
    match report {
        Ok(r) => match r.emit(cli.format, cli.out.as_deref()) {
            Ok(()) => r.status,
            Err(e) => {
                eprintln!("error: {e}");
                Status::NumericalFailure
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            status_of(&e)
        }
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(value) = std::env::var("AMVP_THREADS") else {
        return Ok(());
    };
    let n: usize =
        value.trim().parse().map_err(|_| format!("AMVP_THREADS must be a positive integer, got {value:?}"))?;
    if n == 0 {
        return Err("AMVP_THREADS must be positive".into());
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let args = match config::merge(std::env::args().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(Status::ConfigError.code());
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { Status::ConfigError.code() } else { 0 });
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(Status::ConfigError.code());
    }
    let status = match cli.command.clone() {
        Command::Pmean(a) => run(&cli, commands::pmean(a)),
        Command::Verify(a) => run(&cli, commands::verify(a)),
        Command::OracleCheck(a) => run(&cli, commands::oracle_check(a)),
        Command::Solve(a) => run(&cli, commands::solve_grid(a)),
        Command::CompareMeans(a) => run(&cli, commands::compare_means(a)),
    };
    ExitCode::from(status.code())
}
