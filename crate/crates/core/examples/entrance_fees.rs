//! Entrance fees: a kept fee leaves bids unchanged, a fee refunded to the
//! winner raises them.
//!
//! cargo run --example entrance_fees

use forfeit_lab::equilibrium::{
    expected_revenue, solve_classic, solve_fee_kept, solve_fee_returned,
};
use forfeit_lab::model::{Conditionals, SignalModel};
use forfeit_lab::numerics::make_grid;
use forfeit_lab::simulate::{best_response_scan, default_bid_grid, payoff_curve};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let grid = make_grid(0.0, 1.0, 2049)?;
    let cond = Conditionals::new(&SignalModel::uniform_ipv(2)?, &grid)?;
    let classic = solve_classic(&cond)?;
    let bids = default_bid_grid(&classic, 4097)?;

    println!("fee kept by the seller:");
    for fee in [0.0, 0.5, 2.0] {
        let kept = solve_fee_kept(&cond, fee)?;
        let same = kept.values() == classic.values();
        let curve = payoff_curve(&cond, &kept, 0.6, &bids)?;
        let br = best_response_scan(&curve, kept.eval(0.6)?);
        println!(
            "  c = {fee:<4} identical bids: {same}, best bid at x = 0.6: {:.5}, revenue {:.5}",
            br.argmax_bid,
            expected_revenue(&cond, &kept)?
        );
    }

    println!("fee returned to the winner (uniform: alpha = x^2/2 + c x):");
    for fee in [0.0, 0.1, 0.2] {
        let alpha = solve_fee_returned(&cond, fee)?;
        println!(
            "  c = {fee:<4} alpha(0.5) = {:.6} (closed form {:.6})",
            alpha.eval(0.5)?,
            0.125 + fee * 0.5
        );
    }
    Ok(())
}
