use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cvar::commands::{self, Context, Overrides};

#[derive(Parser)]
#[command(name = "cvar", version, about = "Cointegrated VAR estimation, control analysis and counterfactual simulation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Args)]
struct Flags {
    /// Run configuration (TOML).
    #[arg(long, global = true, default_value = "cvar.toml")]
    config: PathBuf,
    /// Data file, overriding `[data].path`.
    #[arg(long, global = true)]
    data: Option<PathBuf>,
    /// Model spec file, overriding `[model].spec`.
    #[arg(long, global = true)]
    spec: Option<PathBuf>,
    /// Policy file, overriding `[control].policy` and the scenario's policy.
    #[arg(long, global = true)]
    policy: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Bootstrap replications for whichever bootstrap the command runs.
    #[arg(long = "bootstrap", value_name = "B", global = true)]
    bootstrap: Option<usize>,
    /// Overwrite existing outputs.
    #[arg(long, global = true)]
    force: bool,
    /// List the written files on stderr.
    #[arg(short, long, global = true)]
    verbose: bool,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Load the data, run the transform list and write the prepared frame.
    Prepare,
    /// Fit the error-correction model and store the estimate.
    Estimate,
    /// Trace test for the cointegration rank.
    Ranktest,
    /// Parameter-constancy test of the stored estimate.
    Stability,
    /// Controllability test and stabilizing rule for a policy.
    Control,
    /// Counterfactual replay, bands, forecast and cost report for a scenario.
    Simulate,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let f = cli.flags;
    let ov = Overrides {
        data: f.data,
        spec: f.spec,
        policy: f.policy,
        seed: f.seed,
        out: f.out,
        bootstrap: f.bootstrap,
        force: f.force,
    };
    let result = Context::load(&f.config, ov).and_then(|ctx| match cli.command {
        Command::Prepare => commands::prepare(&ctx),
        Command::Estimate => commands::estimate(&ctx),
        Command::Ranktest => commands::ranktest(&ctx),
        Command::Stability => commands::stability(&ctx),
        Command::Control => commands::control(&ctx),
        Command::Simulate => commands::simulate(&ctx),
    });
    match result {
        Ok(paths) => {
            if f.verbose {
                for p in paths {
                    eprintln!("wrote {}", p.display());
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
