use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gentrack::harness::{calculus_suite, check, run, sweep, ExperimentConfig, SweepAxis};
use gentrack::Error;

/// Track generator functions of Galerkin solutions against Hopf-type majorants.
#[derive(Parser)]
#[command(name = "gentrack", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment and write its artifacts.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// `section.key=value`, applied after the file.
        #[arg(long = "override", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
    },
    /// Repeat an experiment over N, dt or B and report convergence.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        axis: String,
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        values: Vec<f64>,
        #[arg(long = "override", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
    },
    /// Re-verify a stored artifact directory.
    Check {
        #[arg(long)]
        artifacts: PathBuf,
    },
    /// Run the seeded generator calculus property suite.
    CalculusTest {
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Usage and configuration problems exit with 2, everything else with 1.
fn fail(e: Error) -> ExitCode {
    eprintln!("error: {e}");
    match e {
        Error::InvalidConfig(_) | Error::Parse(_) => ExitCode::from(2),
        _ => ExitCode::from(1),
    }
}

fn load(path: &PathBuf, overrides: &[String]) -> Result<ExperimentConfig, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidConfig(format!("{}: {e}", path.display())))?;
    ExperimentConfig::from_toml(&text)?.with_overrides(overrides)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { config, overrides } => {
            let cfg = match load(&config, &overrides) {
                Ok(c) => c,
                Err(e) => return fail(e),
            };
            match run(&cfg) {
                Ok(out) => {
                    if let Some(v) = &out.verdict {
                        print!("{}", v.domination_text());
                    }
                    println!("{}", out.summary);
                    ExitCode::from(out.exit_code() as u8)
                }
                Err(e) => fail(e),
            }
        }
        Command::Sweep { config, axis, values, overrides } => {
            let result = SweepAxis::parse(&axis).and_then(|a| Ok((a, load(&config, &overrides)?))).and_then(|(a, cfg)| sweep(&cfg, a, &values));
            match result {
                Ok(rep) => {
                    print!("{}", rep.to_csv());
                    ExitCode::SUCCESS
                }
                Err(e) => fail(e),
            }
        }
        Command::Check { artifacts } => match check(&artifacts) {
            Ok(c) => {
                println!("curves reproduced: {}", c.curves_reproduced);
                println!("stored verdict: {}", if c.stored_pass { "PASS" } else { "FAIL" });
                println!("{}", c.summary);
                ExitCode::from(c.exit_code() as u8)
            }
            Err(e) => fail(e),
        },
        Command::CalculusTest { trials, seed } => match calculus_suite(trials, seed) {
            Ok(rep) => {
                println!("{rep}");
                if rep.passed() {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                }
            }
            Err(e) => fail(e),
        },
    }
}
