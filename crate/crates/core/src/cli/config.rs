use std::fmt;
use std::path::Path;

use crate::equilibrium::DEFAULT_TRUNCATION;
use crate::model::{parse_density, Conditionals, Expr, Family, ModelError, SignalModel, ValueFn};
use crate::numerics::{make_grid, Grid, DEFAULT_GRID_NODES};
use crate::simulate::{SimulationConfig, DEFAULT_BID_GRID_NODES};

/// Environment variable overriding the default grid size when the config leaves it unset.
pub const GRID_NODES_ENV: &str = "FORFEIT_LAB_GRID_NODES";

const FAMILIES: &str = "ipv, pair";
const VALUE_KINDS: &str = "private, expr";

/// A config-file problem, with the 1-based line it was found on when there is one.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub message: String,
}

impl ConfigError {
    fn at(line: usize, message: impl Into<String>) -> Self {
        ConfigError {
            line: Some(line),
            message: message.into(),
        }
    }

    fn global(message: impl Into<String>) -> Self {
        ConfigError {
            line: None,
            message: message.into(),
        }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelConfig {
    pub family: Family,
    pub n_bidders: usize,
    pub support: (f64, f64),
    pub density_source: String,
    pub density: Expr,
    pub value: ValueFn,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericsConfig {
    /// `None` defers to the environment variable, then to the built-in default.
    pub grid_nodes: Option<usize>,
    pub delta_truncation: f64,
    pub bid_grid_nodes: usize,
}

/// Everything a command needs: the signal model, discretisation and simulation settings.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub model: ModelConfig,
    pub numerics: NumericsConfig,
    pub simulation: SimulationConfig,
}

impl RunConfig {
    pub fn signal_model(&self) -> Result<SignalModel, ModelError> {
        let m = &self.model;
        SignalModel::new(
            m.family,
            m.n_bidders,
            m.support,
            m.density.clone(),
            m.value.clone(),
        )
    }

    /// Grid size: the config value, else the environment override, else the default.
    pub fn grid_nodes(&self) -> usize {
        self.numerics.grid_nodes.unwrap_or_else(|| {
            std::env::var(GRID_NODES_ENV)
                .ok()
                .and_then(|s| s.trim().parse().ok())
                .unwrap_or(DEFAULT_GRID_NODES)
        })
    }

    pub fn grid(&self) -> Result<Grid, ModelError> {
        let (lo, hi) = self.model.support;
        Ok(make_grid(lo, hi, self.grid_nodes())?)
    }

    pub fn conditionals(&self) -> Result<Conditionals, ModelError> {
        Conditionals::new(&self.signal_model()?, &self.grid()?)
    }

    /// Simulation settings with the bid grid taken from the numerics section.
    pub fn simulation_config(&self) -> SimulationConfig {
        SimulationConfig {
            bid_grid_nodes: self.numerics.bid_grid_nodes,
            ..self.simulation
        }
    }
}

/// Read and validate a config file.
pub fn parse_config(path: impl AsRef<Path>) -> Result<RunConfig, ConfigError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError::global(format!("cannot read {}: {e}", path.display())))?;
    parse_config_str(&text)
}

/// Parse the `section.key = value` format; `#` starts a comment.
pub fn parse_config_str(text: &str) -> Result<RunConfig, ConfigError> {
    let mut family = None;
    let mut n_bidders = None;
    let mut support_lo = None;
    let mut support_hi = None;
    let mut density: Option<(usize, String)> = None;
    let mut value_kind: Option<(usize, String)> = None;
    let mut value_expr: Option<(usize, String)> = None;
    let mut numerics = NumericsConfig {
        grid_nodes: None,
        delta_truncation: DEFAULT_TRUNCATION,
        bid_grid_nodes: DEFAULT_BID_GRID_NODES,
    };
    let mut simulation = SimulationConfig::default();
    let mut seen: Vec<String> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            ConfigError::at(line_no, format!("expected `key = value`, got `{line}`"))
        })?;
        let key = key.trim();
        let value = unquote(value.trim()).map_err(|m| ConfigError::at(line_no, m))?;
        if seen.iter().any(|k| k == key) {
            return Err(ConfigError::at(line_no, format!("duplicate key {key}")));
        }
        seen.push(key.to_string());
        match key {
            "model.family" => {
                family = Some(match value.as_str() {
                    "ipv" => Family::Ipv,
                    "pair" => Family::Pair,
                    other => {
                        return Err(ConfigError::at(
                            line_no,
                            format!("unknown model.family `{other}` (allowed: {FAMILIES})"),
                        ))
                    }
                })
            }
            "model.n_bidders" => n_bidders = Some(number(line_no, key, &value)?),
            "model.support_lo" => support_lo = Some(number(line_no, key, &value)?),
            "model.support_hi" => support_hi = Some(number(line_no, key, &value)?),
            "model.density" => density = Some((line_no, value)),
            "model.value_kind" => value_kind = Some((line_no, value)),
            "model.value_expr" => value_expr = Some((line_no, value)),
            "numerics.grid_nodes" => numerics.grid_nodes = Some(number(line_no, key, &value)?),
            "numerics.delta_truncation" => {
                numerics.delta_truncation = number(line_no, key, &value)?
            }
            "numerics.bid_grid_nodes" => numerics.bid_grid_nodes = number(line_no, key, &value)?,
            "simulation.trials" => simulation.trials = number(line_no, key, &value)?,
            "simulation.seed" => simulation.seed = number(line_no, key, &value)?,
            "simulation.partitions" => simulation.partitions = number(line_no, key, &value)?,
            _ => return Err(ConfigError::at(line_no, format!("unknown key {key}"))),
        }
    }

    let family = family.ok_or_else(|| ConfigError::global("model.family missing"))?;
    let (density_line, density_source) = density.unwrap_or((0, "1".to_string()));
    let density =
        parse_density(&density_source).map_err(|e| locate(density_line, e.to_string()))?;
    let value = match value_kind {
        None => match value_expr {
            Some((line, _)) => {
                return Err(ConfigError::at(
                    line,
                    "model.value_expr requires model.value_kind = expr",
                ))
            }
            None => ValueFn::Private,
        },
        Some((line, kind)) => match kind.as_str() {
            "private" => ValueFn::Private,
            "expr" => {
                let (expr_line, src) = value_expr.ok_or_else(|| {
                    ConfigError::at(line, "model.value_kind = expr needs model.value_expr")
                })?;
                ValueFn::Expr(
                    parse_density(&src).map_err(|e| ConfigError::at(expr_line, e.to_string()))?,
                )
            }
            other => {
                return Err(ConfigError::at(
                    line,
                    format!("unknown model.value_kind `{other}` (allowed: {VALUE_KINDS})"),
                ))
            }
        },
    };
    if let Some(n) = numerics.grid_nodes {
        if n < 3 || n.is_multiple_of(2) {
            return Err(ConfigError::global(format!(
                "numerics.grid_nodes must be odd and at least 3, got {n}"
            )));
        }
    }
    if numerics.bid_grid_nodes < 3 || numerics.bid_grid_nodes.is_multiple_of(2) {
        return Err(ConfigError::global(format!(
            "numerics.bid_grid_nodes must be odd and at least 3, got {}",
            numerics.bid_grid_nodes
        )));
    }
    let config = RunConfig {
        model: ModelConfig {
            family,
            n_bidders: n_bidders.unwrap_or(2),
            support: (support_lo.unwrap_or(0.0), support_hi.unwrap_or(1.0)),
            density_source,
            density,
            value,
        },
        numerics,
        simulation,
    };
    // surface model-level inconsistencies (pair with n = 3, ipv density using y, ...) now
    config
        .signal_model()
        .map_err(|e| ConfigError::global(e.to_string()))?;
    Ok(config)
}

fn locate(line: usize, message: String) -> ConfigError {
    if line == 0 {
        ConfigError::global(message)
    } else {
        ConfigError::at(line, message)
    }
}

fn number<T: std::str::FromStr>(line: usize, key: &str, value: &str) -> Result<T, ConfigError> {
    value
        .parse()
        .map_err(|_| ConfigError::at(line, format!("malformed value for {key}: `{value}`")))
}

// `#` inside a quoted string is kept
fn strip_comment(line: &str) -> &str {
    let mut quoted = false;
    for (i, ch) in line.char_indices() {
        match ch {
            '"' => quoted = !quoted,
            '#' if !quoted => return &line[..i],
            _ => {}
        }
    }
    line
}

fn unquote(value: &str) -> Result<String, String> {
    match value.strip_prefix('"') {
        Some(rest) => rest
            .strip_suffix('"')
            .filter(|inner| !inner.contains('"'))
            .map(str::to_string)
            .ok_or_else(|| format!("unterminated string {value}")),
        None => Ok(value.to_string()),
    }
}
