mod commands;
mod config;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{CommonArgs, RunConfig, Suite};

/// Walk-type zeta functions, series coefficients and identity checks.
#[derive(Parser)]
#[command(name = "walkzeta", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inverse zeta values on a finite torus (--N) or in the limit (--n-quad).
    Zeta {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Series coefficients C_r by quadrature and by return matrix weights.
    Coeffs {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Residual tables for the closed forms, arc determinant identity and factorization.
    Verify {
        #[arg(long, value_enum)]
        suite: Option<Suite>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Evolve a localized state and emit the measure at every step.
    Simulate {
        #[arg(long)]
        steps: Option<usize>,
        /// Exponent of the measure (1 or 2); chosen from the coin when absent.
        #[arg(long)]
        p: Option<u32>,
        #[command(flatten)]
        common: CommonArgs,
    },
}

fn run(cli: Cli) -> anyhow::Result<Vec<String>> {
    type Handler = fn(&RunConfig) -> anyhow::Result<commands::Report>;
    let (cfg, handler): (RunConfig, Handler) = match &cli.command {
        Command::Zeta { common } => (RunConfig::load(common, None, None, None)?, commands::zeta),
        Command::Coeffs { common } => (RunConfig::load(common, None, None, None)?, commands::coeffs),
        Command::Verify { suite, common } => (RunConfig::load(common, None, None, *suite)?, commands::verify),
        Command::Simulate { steps, p, common } => (RunConfig::load(common, *steps, *p, None)?, commands::simulate),
    };
    if cfg.serial {
        rayon::ThreadPoolBuilder::new().num_threads(1).build_global().ok();
    }
    let report = handler(&cfg)?;
    commands::write_output(&cfg, &report.body)?;
    Ok(report.failures)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(failures) if failures.is_empty() => ExitCode::SUCCESS,
        Ok(failures) => {
            for f in &failures {
                eprintln!("FAIL {f}");
            }
            eprintln!("{} check(s) above tolerance", failures.len());
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
