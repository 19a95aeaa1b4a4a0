//! Symmetric equilibrium bid functions for each forfeit scheme, and the
//! expected payments they imply.

mod payment;
mod scheme;
mod solvers;

pub use payment::{expected_payment, expected_payment_for_scheme, expected_revenue};
pub use scheme::{BidStrategy, ForfeitScheme};
pub use solvers::{
    solve, solve_classic, solve_exponential_asymptotic, solve_exponential_ode, solve_fee_kept,
    solve_fee_returned, solve_first_price, solve_fractional, DEFAULT_TRUNCATION, MIN_DENOMINATOR,
};

use thiserror::Error;

use crate::model::ModelError;
use crate::numerics::NumericsError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolveError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error("{0}")]
    InvalidParameter(String),
    #[error("non-finite integrand at x = {x}")]
    NonFinite { x: f64 },
    #[error("division by zero at x = {x} (F(x|x) vanishes away from the lower edge)")]
    DivisionByZero { x: f64 },
    #[error("unsolvable: {0}")]
    Unsolvable(String),
}
