//! Symmetric equilibrium bidding in all-pay auctions with alternative
//! forfeit rules, plus the machinery to check those equilibria independently.
//!
//! The crate is organised bottom-up:
//!
//! - [`numerics`]: grids, trapezoid/Simpson quadrature, RK4, monotone tables.
//! - [`model`]: signal distributions, conditionals of the highest rival
//!   signal, a density expression parser, hypothesis diagnostics.
//! - [`equilibrium`]: bid functions for every forfeit scheme and expected payments.
//! - [`simulate`]: payoff rules, expected-payoff curves, best-response scans,
//!   Monte Carlo auctions.
//! - [`cli`]: config files, scheme specs and the commands behind the
//!   `forfeit-lab` binary.
//!
//! ```
//! use forfeit_lab::equilibrium::solve_fractional;
//! use forfeit_lab::model::{Conditionals, SignalModel};
//! use forfeit_lab::numerics::make_grid;
//!
//! let grid = make_grid(0.0, 1.0, 1025).unwrap();
//! let cond = Conditionals::new(&SignalModel::uniform_ipv(2).unwrap(), &grid).unwrap();
//! let alpha = solve_fractional(&cond, 0.5).unwrap();
//! // two uniform bidders: alpha(x) = x^2 / (2 (beta + (1 - beta) x))
//! assert!((alpha.eval(0.5).unwrap() - 1.0 / 6.0).abs() < 1e-4);
//! ```

pub mod cli;
pub mod equilibrium;
pub mod model;
pub mod numerics;
pub mod simulate;
