use std::fmt;

use super::SolveError;
use crate::numerics::{Grid, NumericsError, TabulatedFunction};

/// Who pays what. The winner's payment and the losers' forfeit are both
/// functions of the bidder's own bid only.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ForfeitScheme {
    /// Everyone pays their bid.
    Classic,
    /// Only the winner pays.
    FirstPrice,
    /// Everyone pays their bid plus an entrance fee.
    FeeKept { fee: f64 },
    /// Everyone pays their bid; losers also lose the entrance fee.
    FeeReturned { fee: f64 },
    /// The winner pays the bid, losers a fraction `beta` of theirs.
    Fractional { beta: f64 },
    /// The winner pays the bid, losers pay `exp(bid)`.
    Exponential,
}

impl ForfeitScheme {
    pub fn validate(&self) -> Result<(), SolveError> {
        match *self {
            ForfeitScheme::FeeKept { fee } | ForfeitScheme::FeeReturned { fee }
                if !(fee >= 0.0 && fee.is_finite()) =>
            {
                Err(SolveError::InvalidParameter(format!(
                    "entrance fee must be finite and non-negative, got {fee}"
                )))
            }
            ForfeitScheme::Fractional { beta } if !(0.0..=1.0).contains(&beta) => Err(
                SolveError::InvalidParameter(format!("beta out of range [0, 1]: {beta}")),
            ),
            _ => Ok(()),
        }
    }

    /// Amount paid by a bidder who wins with bid `b`.
    pub fn winner_payment(&self, b: f64) -> f64 {
        match *self {
            ForfeitScheme::FeeKept { fee } => b + fee,
            _ => b,
        }
    }

    /// Amount forfeited by a bidder who loses with bid `b`.
    pub fn loser_payment(&self, b: f64) -> f64 {
        match *self {
            ForfeitScheme::Classic => b,
            ForfeitScheme::FirstPrice => 0.0,
            ForfeitScheme::FeeKept { fee } | ForfeitScheme::FeeReturned { fee } => b + fee,
            ForfeitScheme::Fractional { beta } => beta * b,
            ForfeitScheme::Exponential => b.exp(),
        }
    }
}

impl fmt::Display for ForfeitScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ForfeitScheme::Classic => f.write_str("classic"),
            ForfeitScheme::FirstPrice => f.write_str("first-price"),
            ForfeitScheme::FeeKept { fee } => write!(f, "fee-kept:{fee}"),
            ForfeitScheme::FeeReturned { fee } => write!(f, "fee-returned:{fee}"),
            ForfeitScheme::Fractional { beta } => write!(f, "fractional:{beta}"),
            ForfeitScheme::Exponential => f.write_str("exponential"),
        }
    }
}

/// A tabulated symmetric bid function `alpha(x)` and the scheme it solves.
#[derive(Debug, Clone, PartialEq)]
pub struct BidStrategy {
    scheme: ForfeitScheme,
    table: TabulatedFunction,
}

impl BidStrategy {
    pub fn new(scheme: ForfeitScheme, table: TabulatedFunction) -> Result<Self, SolveError> {
        let start = table.values()[0];
        if start != 0.0 {
            return Err(SolveError::Unsolvable(format!(
                "bid at the lowest signal must be 0, got {start}"
            )));
        }
        if let Some((i, _)) = table
            .values()
            .iter()
            .enumerate()
            .find(|(_, v)| !v.is_finite())
        {
            return Err(SolveError::NonFinite {
                x: table.grid().nodes()[i],
            });
        }
        Ok(BidStrategy { scheme, table })
    }

    pub fn scheme(&self) -> ForfeitScheme {
        self.scheme
    }

    pub fn table(&self) -> &TabulatedFunction {
        &self.table
    }

    pub fn grid(&self) -> &Grid {
        self.table.grid()
    }

    pub fn values(&self) -> &[f64] {
        self.table.values()
    }

    pub fn eval(&self, x: f64) -> Result<f64, NumericsError> {
        self.table.eval(x)
    }

    pub fn inverse(&self, bid: f64) -> Result<f64, NumericsError> {
        self.table.inverse(bid)
    }

    /// Bid at the top of the tabulated range.
    pub fn max_bid(&self) -> f64 {
        *self.table.values().last().unwrap()
    }

    /// True when the bid strictly increases between every pair of interior nodes.
    pub fn is_increasing_inside(&self) -> bool {
        let v = self.table.values();
        v[1..v.len() - 1].windows(2).all(|w| w[1] > w[0])
    }
}
