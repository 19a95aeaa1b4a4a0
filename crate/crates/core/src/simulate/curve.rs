use super::SimulationError;
use crate::equilibrium::BidStrategy;
use crate::model::Conditionals;
use crate::numerics::{running_trapezoid, Grid, MonotoneCubic, TabulatedFunction};

/// Default number of bids in a best-response scan.
pub const DEFAULT_BID_GRID_NODES: usize = 4097;
/// Scan range above the highest equilibrium bid.
pub const BID_GRID_HEADROOM: f64 = 1.25;

/// Bid grid `[0, 1.25 alpha(hi)]` for scanning deviations.
pub fn default_bid_grid(alpha: &BidStrategy, nodes: usize) -> Result<Grid, SimulationError> {
    let top = alpha.max_bid();
    let span = if top > 0.0 {
        BID_GRID_HEADROOM * top
    } else {
        1.0
    };
    Ok(Grid::new(0.0, span, nodes)?)
}

/// Expected payoff `Pi(b, x)` of a bidder with signal `x` who bids `b`
/// while every rival follows `alpha`, for each `b` on `bid_grid`.
///
/// Bids below `alpha(lo)` never win; bids at or above the top equilibrium
/// bid always win. The rival signal a bid ties with is found on a monotone
/// cubic through `alpha`, whose smooth slope keeps the argmax from drifting
/// by a cell where the payoff is flat.
pub fn payoff_curve(
    c: &Conditionals,
    alpha: &BidStrategy,
    x: f64,
    bid_grid: &Grid,
) -> Result<TabulatedFunction, SimulationError> {
    if bid_grid.lo() < 0.0 {
        return Err(SimulationError::BidOutOfRange(bid_grid.lo()));
    }
    if !alpha.table().is_strictly_increasing() {
        return Err(SimulationError::NotIncreasing);
    }
    let scheme = alpha.scheme();
    let smooth = MonotoneCubic::new(alpha.table())?;
    let slice = c.slice(x)?;
    let grid = c.grid();
    let h = grid.spacing();
    let gain: Vec<f64> = slice
        .value
        .iter()
        .zip(&slice.density)
        .map(|(v, f)| v * f)
        .collect();
    let gain_cum = running_trapezoid(&gain, h);
    let lowest = alpha.values()[0];
    let highest = alpha.max_bid();

    let mut out = Vec::with_capacity(bid_grid.len());
    for &b in bid_grid.nodes() {
        let y_star = if b <= lowest {
            grid.lo()
        } else if b >= highest {
            grid.hi()
        } else {
            smooth.inverse(b)?.min(grid.hi())
        };
        // partial cell by the trapezoid rule, consistent with the running tables
        let (k, t) = grid.locate(y_star);
        let dy = t * h;
        let gain_star = gain[k] + t * (gain[k + 1] - gain[k]);
        let dens_star = slice.density[k] + t * (slice.density[k + 1] - slice.density[k]);
        let won_value = gain_cum[k] + 0.5 * dy * (gain[k] + gain_star);
        let win_prob = if y_star >= grid.hi() {
            1.0
        } else {
            (slice.cdf[k] + 0.5 * dy * (slice.density[k] + dens_star)).min(1.0)
        };
        out.push(
            won_value
                - win_prob * scheme.winner_payment(b)
                - (1.0 - win_prob) * scheme.loser_payment(b),
        );
    }
    Ok(TabulatedFunction::new(bid_grid.clone(), out)?)
}

/// Result of scanning a payoff curve for its best bid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BestResponse {
    pub argmax_bid: f64,
    pub max_payoff: f64,
    pub equilibrium_bid: f64,
    /// `|argmax - equilibrium_bid|` in bid units.
    pub gap: f64,
    /// The gap measured in bid-grid cells.
    pub gap_cells: f64,
    pub passed: bool,
}

/// Allowed distance, in bid-grid cells, between the best bid and the equilibrium bid.
pub const MAX_GAP_CELLS: f64 = 2.0;

/// Locate the payoff-maximising bid and compare it with the equilibrium bid.
pub fn best_response_scan(curve: &TabulatedFunction, alpha_at_x: f64) -> BestResponse {
    let (mut best_i, mut best) = (0, f64::NEG_INFINITY);
    for (i, &p) in curve.values().iter().enumerate() {
        if p > best {
            best = p;
            best_i = i;
        }
    }
    let argmax_bid = curve.grid().nodes()[best_i];
    let gap = (argmax_bid - alpha_at_x).abs();
    let gap_cells = gap / curve.grid().spacing();
    BestResponse {
        argmax_bid,
        max_payoff: best,
        equilibrium_bid: alpha_at_x,
        gap,
        gap_cells,
        passed: gap_cells <= MAX_GAP_CELLS + 1e-9,
    }
}
