use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use qsteer::error::{Error, Result};
use qsteer::explorer::{
    self, execute, family_from_args, Grid, Mode, Objective, OutputFormat, RunConfig,
};
use qsteer::steering::Scenario;

/// Explore entropic steering of cloned qudit pairs: per-λ reports, family
/// sweeps, simplex sampling, adversarial optimization against the two-copy
/// bound, and noise thresholds.
#[derive(Parser)]
#[command(name = "qsteer", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Qudit dimension
    #[arg(long = "d", default_value_t = 2)]
    d: usize,

    /// Scenario: epr (entangled pair) or ss (single system)
    #[arg(long, default_value = "epr", value_parser = Scenario::from_str)]
    scenario: Scenario,

    /// Seed for all randomness in the run
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Output format: json or csv
    #[arg(long, default_value = "json", value_parser = OutputFormat::from_str)]
    format: OutputFormat,

    /// Write output here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,

    /// Slack tolerance for the internal bound assertions
    #[arg(long, default_value_t = explorer::DEFAULT_TOL)]
    tol: f64,
}

#[derive(Args)]
struct FamilyArgs {
    /// λ family: delta | uniform | depolarizing | product | custom
    #[arg(long, default_value = "delta")]
    family: String,

    /// Family parameter (depolarizing weight p)
    #[arg(long)]
    param: Option<f64>,

    /// Comma-separated row profile for the product family
    #[arg(long, value_delimiter = ',')]
    q1: Option<Vec<f64>>,

    /// Comma-separated column profile for the product family
    #[arg(long, value_delimiter = ',')]
    q2: Option<Vec<f64>>,

    /// JSON λ file ({"d": d, "lambda": [[...]]}) for the custom family
    #[arg(long)]
    lambda_file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one λ table and emit its full report
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// One report per grid point of the depolarizing family
    Sweep {
        #[command(flatten)]
        common: CommonArgs,
        /// λ family (only depolarizing sweeps are defined)
        #[arg(long, default_value = "depolarizing")]
        family: String,
        /// Parameter grid start:stop:steps (inclusive endpoints)
        #[arg(long)]
        grid: String,
    },
    /// Reports over seeded Dirichlet draws from the λ simplex
    Sample {
        #[command(flatten)]
        common: CommonArgs,
        /// Number of draws
        #[arg(long, default_value_t = 100)]
        samples: u64,
        /// Dirichlet concentration (1 = uniform on the simplex)
        #[arg(long, default_value_t = 1.0)]
        concentration: f64,
    },
    /// Search the λ simplex for the largest objective value
    Optimize {
        #[command(flatten)]
        common: CommonArgs,
        /// Objective: total or exclusivity
        #[arg(long, default_value = "total", value_parser = Objective::from_str)]
        objective: Objective,
        /// Number of local-search restarts
        #[arg(long, default_value_t = 20)]
        restarts: u32,
    },
    /// Largest depolarizing weight that still certifies AB steering
    Threshold {
        #[command(flatten)]
        common: CommonArgs,
        /// λ family (only the depolarizing threshold is defined)
        #[arg(long, default_value = "depolarizing")]
        family: String,
    },
}

fn build_config(command: Command) -> Result<(RunConfig, Option<PathBuf>)> {
    let (common, mode) = match command {
        Command::Verify { common, family } => {
            let fam = family_from_args(
                &family.family,
                family.param,
                family.q1.as_deref(),
                family.q2.as_deref(),
                family.lambda_file.as_ref(),
            )?;
            (common, Mode::Verify { family: fam })
        }
        Command::Sweep {
            common,
            family,
            grid,
        } => {
            if family != "depolarizing" {
                return Err(Error::InvalidConfig {
                    reason: format!("sweep supports only the depolarizing family, got `{family}`"),
                });
            }
            let grid = Grid::from_str(&grid)?;
            (
                common,
                Mode::Sweep {
                    family: qsteer::cloning::LambdaFamily::Depolarizing(0.0),
                    grid,
                },
            )
        }
        Command::Sample {
            common,
            samples,
            concentration,
        } => (
            common,
            Mode::Sample {
                samples,
                concentration,
            },
        ),
        Command::Optimize {
            common,
            objective,
            restarts,
        } => (
            common,
            Mode::Optimize {
                objective,
                restarts,
            },
        ),
        Command::Threshold { common, family } => {
            if family != "depolarizing" {
                return Err(Error::InvalidConfig {
                    reason: format!(
                        "threshold supports only the depolarizing family, got `{family}`"
                    ),
                });
            }
            (common, Mode::Threshold)
        }
    };
    let out = common.out.clone();
    Ok((
        RunConfig {
            d: common.d,
            scenario: common.scenario,
            mode,
            seed: common.seed,
            format: common.format,
            tol: common.tol,
        },
        out,
    ))
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::TheoremViolation { .. } => 3,
        Error::Io(_) => 4,
        _ => 2,
    }
}

fn run(cli: Cli) -> Result<()> {
    let (config, out) = build_config(cli.command)?;
    let rendered = execute(&config)?;
    match out {
        Some(path) => std::fs::write(path, rendered)?,
        None => std::io::stdout().write_all(rendered.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}
