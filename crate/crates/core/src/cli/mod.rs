//! Config files, scheme specs, CSV output and the commands behind the
//! `forfeit-lab` binary.
//!
//! # Config format
//!
//! One `section.key = value` per line; `#` starts a comment and string
//! values may be double-quoted. Recognised keys and defaults:
//!
//! | key | default |
//! |---|---|
//! | `model.family` | required: `ipv` or `pair` |
//! | `model.n_bidders` | 2 (`pair` requires 2) |
//! | `model.support_lo`, `model.support_hi` | 0, 1 |
//! | `model.density` | `"1"`; `g(x)` for `ipv`, `f(x, y)` for `pair` |
//! | `model.value_kind` | `private` (`v = x`) or `expr` |
//! | `model.value_expr` | expression in `x` and `y`, needed for `expr` |
//! | `numerics.grid_nodes` | `FORFEIT_LAB_GRID_NODES`, else 2049 |
//! | `numerics.delta_truncation` | 1e-3 |
//! | `numerics.bid_grid_nodes` | 4097 |
//! | `simulation.trials` | 100000 |
//! | `simulation.seed` | 42 |
//! | `simulation.partitions` | 1 |
//!
//! Expressions use numbers, `x`, `y`, `+ - * / ^`, unary minus and parentheses.

mod args;
mod commands;
mod config;
mod csv;
mod scheme_spec;

pub use args::{run, Cli, Command, Common};
pub use commands::{
    cmd_best_response, cmd_check, cmd_compare, cmd_simulate, cmd_solve, solve_spec, CommandOutcome,
};
pub use config::{
    parse_config, parse_config_str, ConfigError, ModelConfig, NumericsConfig, RunConfig,
    GRID_NODES_ENV,
};
pub use csv::{format_number, CsvWriter, SIGNIFICANT_DIGITS};
pub use scheme_spec::{parse_scheme_list, SchemeSpec, SchemeSpecError};

use thiserror::Error;

use crate::equilibrium::SolveError;
use crate::model::ModelError;
use crate::numerics::NumericsError;
use crate::simulate::SimulationError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("config: {0}")]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Scheme(#[from] SchemeSpecError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Simulation(#[from] SimulationError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl CliError {
    /// 2 for usage and config problems, 1 for failures in the computation itself.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Config(_) | CliError::Scheme(_) => 2,
            _ => 1,
        }
    }
}
