//! Signal distributions, the conditional law of the highest rival signal,
//! and sampled checks of the structural hypotheses (affiliation and friends).

mod conditionals;
mod diagnostics;
mod expr;
mod signal;

pub use conditionals::{
    conditionals_from_model, ConditionalSlice, Conditionals, Diagonal, NORMALIZATION_TOLERANCE,
};
pub use diagnostics::{
    check_affiliation, check_density_increasing, check_lemma1, check_normalization,
    check_psi_increasing, DiagnosticReport, CHECK_TOLERANCE, MAX_CHECK_POINTS,
};
pub use expr::{parse_density, BinOp, Expr, ExprError, Var};
pub use signal::{Family, SignalModel, ValueFn};

use thiserror::Error;

use crate::numerics::NumericsError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error("invalid model: {0}")]
    Invalid(String),
    #[error("density is negative ({value}) at ({x}, {y})")]
    NegativeDensity { x: f64, y: f64, value: f64 },
    #[error("density is not finite at ({x}, {y})")]
    NonFiniteDensity { x: f64, y: f64 },
    #[error("joint density is not symmetric: f({x}, {y}) != f({y}, {x})")]
    Asymmetric { x: f64, y: f64 },
    #[error("density integrates to zero along the slice at x = {x}")]
    Degenerate { x: f64 },
    #[error("grid [{lo}, {hi}] does not match the model support [{support_lo}, {support_hi}]")]
    GridMismatch {
        lo: f64,
        hi: f64,
        support_lo: f64,
        support_hi: f64,
    },
    #[error("{x} lies outside the support [{lo}, {hi}]")]
    OutsideSupport { x: f64, lo: f64, hi: f64 },
}
