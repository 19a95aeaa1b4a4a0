use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use super::commands::{
    cmd_best_response, cmd_check, cmd_compare, cmd_simulate, cmd_solve, CommandOutcome,
};
use super::config::{parse_config, RunConfig};
use super::scheme_spec::{parse_scheme_list, SchemeSpec};
use super::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "forfeit-lab",
    version,
    about = "Equilibrium bids, payoffs and simulations for all-pay auctions with alternative forfeits"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate the equilibrium bid function as `x,alpha`.
    Solve {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        scheme: String,
    },
    /// Simulate auctions under the equilibrium bid function.
    Simulate {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        scheme: String,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Expected payments and revenues of several schemes side by side.
    Compare {
        #[command(flatten)]
        common: Common,
        /// Comma-separated scheme specs.
        #[arg(long)]
        schemes: String,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Expected payoff of every deviation bid for one signal.
    BestResponse {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        scheme: String,
        #[arg(long)]
        signal: f64,
    },
    /// Check affiliation and the other model hypotheses on a grid.
    Check {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Args)]
pub struct Common {
    /// Run configuration in `section.key = value` format.
    #[arg(long)]
    pub config: PathBuf,
    /// Write the CSV here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parse arguments, run the command and return the process exit code.
/// Diagnostics go to standard error.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return parse_failure_code(&e);
        }
    };
    match dispatch(cli.command) {
        Ok(outcome) => {
            for m in &outcome.messages {
                eprintln!("{m}");
            }
            outcome.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// `--help` and `--version` exit 0, every other argument error 2.
fn parse_failure_code(e: &clap::Error) -> i32 {
    if e.use_stderr() {
        2
    } else {
        0
    }
}

fn dispatch(command: Command) -> Result<CommandOutcome, CliError> {
    match command {
        Command::Solve { common, scheme } => {
            let cfg = load(&common)?;
            let spec: SchemeSpec = scheme.parse()?;
            with_output(&common, |w| cmd_solve(&cfg, spec, w))
        }
        Command::Simulate {
            common,
            scheme,
            trials,
            seed,
        } => {
            let cfg = overridden(load(&common)?, trials, seed);
            let spec: SchemeSpec = scheme.parse()?;
            with_output(&common, |w| cmd_simulate(&cfg, spec, w))
        }
        Command::Compare {
            common,
            schemes,
            trials,
            seed,
        } => {
            let cfg = overridden(load(&common)?, trials, seed);
            let specs = parse_scheme_list(&schemes)?;
            with_output(&common, |w| cmd_compare(&cfg, &specs, w))
        }
        Command::BestResponse {
            common,
            scheme,
            signal,
        } => {
            let cfg = load(&common)?;
            let spec: SchemeSpec = scheme.parse()?;
            with_output(&common, |w| cmd_best_response(&cfg, spec, signal, w))
        }
        Command::Check { common } => {
            let cfg = load(&common)?;
            with_output(&common, |w| cmd_check(&cfg, w))
        }
    }
}

fn load(common: &Common) -> Result<RunConfig, CliError> {
    Ok(parse_config(&common.config)?)
}

fn overridden(mut cfg: RunConfig, trials: Option<usize>, seed: Option<u64>) -> RunConfig {
    if let Some(t) = trials {
        cfg.simulation.trials = t;
    }
    if let Some(s) = seed {
        cfg.simulation.seed = s;
    }
    cfg
}

// output goes to a buffer first so a failed command leaves no partial file
fn with_output<F>(common: &Common, f: F) -> Result<CommandOutcome, CliError>
where
    F: FnOnce(&mut dyn Write) -> Result<CommandOutcome, CliError>,
{
    let mut buf = Vec::new();
    let outcome = f(&mut buf)?;
    match &common.out {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| CliError::Io(format!("cannot create {}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            w.write_all(&buf)?;
            w.flush()?;
        }
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(&buf)?;
            stdout.flush()?;
        }
    }
    Ok(outcome)
}
