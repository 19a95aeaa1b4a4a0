//! Realised payoffs, expected-payoff curves for unilateral deviations, and
//! Monte Carlo auctions used to cross-check the equilibrium solvers.

mod curve;
mod monte_carlo;
mod payoff;
mod sampling;

pub use curve::{
    best_response_scan, default_bid_grid, payoff_curve, BestResponse, BID_GRID_HEADROOM,
    DEFAULT_BID_GRID_NODES, MAX_GAP_CELLS,
};
pub use monte_carlo::{
    best_response_max_gap, run_auctions, RunningStats, SimulationConfig, SimulationReport,
    BEST_RESPONSE_POINTS,
};
pub use payoff::{payoff_w, AuctionOutcome};
pub use sampling::{sample_signals, SignalSampler, ENVELOPE_FACTOR, MIN_ACCEPTANCE, MIN_PROPOSALS};

use thiserror::Error;

use crate::equilibrium::SolveError;
use crate::model::ModelError;
use crate::numerics::NumericsError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimulationError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error("{0}")]
    InvalidConfig(String),
    #[error("bid {0} outside the representable range")]
    BidOutOfRange(f64),
    #[error("bid function is not strictly increasing")]
    NotIncreasing,
    #[error("rejection sampling acceptance rate {rate:.2e} is too low")]
    LowAcceptance { rate: f64 },
    #[error("sampling failed: {0}")]
    Sampling(String),
}
