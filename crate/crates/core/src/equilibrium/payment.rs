use super::scheme::{BidStrategy, ForfeitScheme};
use super::SolveError;
use crate::model::Conditionals;
use crate::numerics::{simpson, TabulatedFunction};

/// Expected payment under a fractional forfeit,
/// `e_beta(x) = (F_y1(x|x) + beta (1 - F_y1(x|x))) alpha_beta(x)`.
pub fn expected_payment(
    c: &Conditionals,
    beta: f64,
    alpha: &BidStrategy,
) -> Result<TabulatedFunction, SolveError> {
    ForfeitScheme::Fractional { beta }.validate()?;
    let d = diagonal_for(c, alpha)?;
    Ok(alpha.table().map_indexed(|i, a| {
        let win = d[i];
        (win + beta * (1.0 - win)) * a
    }))
}

/// Expected payment of a bidder with signal `x` bidding `alpha(x)` under any scheme:
/// win probability times the winner's payment plus the complement times the forfeit.
pub fn expected_payment_for_scheme(
    c: &Conditionals,
    alpha: &BidStrategy,
) -> Result<TabulatedFunction, SolveError> {
    let scheme = alpha.scheme();
    let d = diagonal_for(c, alpha)?;
    Ok(alpha.table().map_indexed(|i, a| {
        let win = d[i];
        win * scheme.winner_payment(a) + (1.0 - win) * scheme.loser_payment(a)
    }))
}

/// Seller revenue, `n ∫ e(x) g(x) dx`, by Simpson's rule on the model grid.
/// Strategies tabulated on a shorter grid are held constant above their top node.
pub fn expected_revenue(c: &Conditionals, alpha: &BidStrategy) -> Result<f64, SolveError> {
    let payments = expected_payment_for_scheme(c, alpha)?;
    let grid = c.grid();
    let integrand: Vec<f64> = grid
        .nodes()
        .iter()
        .zip(c.marginal_pdf())
        .map(|(&x, &g)| payments.eval_clamped(x) * g)
        .collect();
    Ok(c.n_bidders() as f64 * simpson(&integrand, grid)?)
}

fn diagonal_for(c: &Conditionals, alpha: &BidStrategy) -> Result<Vec<f64>, SolveError> {
    if alpha.grid() == c.grid() {
        Ok(c.diagonal().cdf.clone())
    } else {
        Ok(c.diagonal_on(alpha.grid())?.cdf)
    }
}
