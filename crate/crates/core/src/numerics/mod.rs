//! Uniform grids, trapezoid/Simpson quadrature, fixed-step RK4,
//! piecewise-linear tables and a monotone cubic interpolant. Everything here is immutable once built.

mod grid;
mod hermite;
mod ode;
mod quadrature;
mod table;

pub use grid::{make_grid, Grid, DEFAULT_GRID_NODES};
pub use hermite::MonotoneCubic;
pub use ode::rk4_solve;
pub use quadrature::{cumulative_integral, simpson, trapezoid};
pub use table::TabulatedFunction;

pub(crate) use quadrature::{running_trapezoid, trapezoid_sum};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumericsError {
    #[error("invalid interval: lo = {lo} must be below hi = {hi}")]
    InvalidInterval { lo: f64, hi: f64 },
    #[error("grid needs an odd node count of at least 3, got {0}")]
    InvalidNodeCount(usize),
    #[error("expected {expected} values, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("{x} is outside [{lo}, {hi}]")]
    OutOfRange { x: f64, lo: f64, hi: f64 },
    #[error("inverse requires strictly increasing values")]
    NotMonotone,
    #[error("non-finite value at x = {x}")]
    NonFinite { x: f64 },
    #[error("initial point {x0} does not match grid start {lo}")]
    StartMismatch { x0: f64, lo: f64 },
    #[error("denominator {value:e} below threshold at x = {x}")]
    SmallDenominator { x: f64, value: f64 },
}
