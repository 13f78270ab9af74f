use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use thermoforge::config::SuiteKind;
use thermoforge::runner::{execute, RunRequest};
use thermoforge_core::Error;

#[derive(Parser)]
#[command(
    name = "thermoforge",
    version,
    about = "Temperature and deposition-quality modeling suites for additive friction stir deposition"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the eight-model peak-temperature regression suite.
    Regress(RunArgs),
    /// Run the four physics-informed network models.
    Pinn(RunArgs),
    /// Run the nine-model deposition-quality classification suite.
    Classify(RunArgs),
    /// Run the configured suites but keep only the SVG plots.
    Plots(RunArgs),
    /// Run every suite named in the config (default: all three).
    All(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// JSON run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output directory (overrides the config's `out`).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Global seed (overrides THERMOFORGE_SEED and the config's `seed`).
    #[arg(long)]
    seed: Option<u64>,
    /// Fit the models of each suite concurrently. Artifacts are identical
    /// to a sequential run; only the timing sidecar differs.
    #[arg(long)]
    parallel: bool,
}

/// Seed precedence: --seed flag, then THERMOFORGE_SEED, then the config.
fn seed_override(args: &RunArgs) -> Result<Option<u64>, Error> {
    if args.seed.is_some() {
        return Ok(args.seed);
    }
    match std::env::var("THERMOFORGE_SEED") {
        Ok(text) => text
            .trim()
            .parse::<u64>()
            .map(Some)
            .map_err(|e| Error::InvalidParameter(format!("THERMOFORGE_SEED '{text}': {e}"))),
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(Error::InvalidParameter(format!("THERMOFORGE_SEED: {e}"))),
    }
}

/// 1 = configuration error, 2 = data error, 3 = training divergence.
fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidParameter(_) | Error::Unsupported(_) => 1,
        Error::Data(_) | Error::Io(_) => 2,
        Error::Diverged(_) => 3,
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    let (args, suites, plots_only) = match &cli.command {
        Command::Regress(a) => (a, Some(vec![SuiteKind::Regress]), false),
        Command::Pinn(a) => (a, Some(vec![SuiteKind::Pinn]), false),
        Command::Classify(a) => (a, Some(vec![SuiteKind::Classify]), false),
        Command::Plots(a) => (a, None, true),
        Command::All(a) => (a, None, false),
    };
    let request = RunRequest {
        config_path: args.config.clone(),
        suites,
        out_override: args.out.clone(),
        seed_override: seed_override(args)?,
        parallel: args.parallel,
        plots_only,
    };
    let summary = execute(&request)?;
    println!(
        "wrote {} files to {} (suites: {}; config {})",
        summary.files_written,
        summary.out_dir.display(),
        summary.suites_run.join(", "),
        &summary.fingerprint[..12],
    );
    Ok(())
}

fn main() {
    // Usage mistakes are configuration errors (exit 1), not clap's
    // default exit 2, which is reserved for data problems.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = i32::from(e.use_stderr());
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(err) = run(cli) {
        eprintln!("error: {err}");
        std::process::exit(exit_code(&err));
    }
}
