//! Expected payoff of every deviation bid against rivals who follow the
//! equilibrium, and where its maximum sits.
//!
//! cargo run --example best_response

use forfeit_lab::equilibrium::{solve, ForfeitScheme};
use forfeit_lab::model::{Conditionals, SignalModel};
use forfeit_lab::numerics::make_grid;
use forfeit_lab::simulate::{
    best_response_scan, default_bid_grid, payoff_curve, DEFAULT_BID_GRID_NODES,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let grid = make_grid(0.0, 1.0, 2049)?;
    let cond = Conditionals::new(&SignalModel::affiliated_pair(), &grid)?;
    for scheme in [
        ForfeitScheme::Classic,
        ForfeitScheme::FirstPrice,
        ForfeitScheme::FeeReturned { fee: 0.1 },
        ForfeitScheme::Fractional { beta: 0.5 },
        ForfeitScheme::Exponential,
    ] {
        let alpha = solve(&cond, scheme)?;
        let bids = default_bid_grid(&alpha, DEFAULT_BID_GRID_NODES)?;
        print!("{:<18}", scheme.to_string());
        for x in [0.2, 0.5, 0.8] {
            let curve = payoff_curve(&cond, &alpha, x, &bids)?;
            let br = best_response_scan(&curve, alpha.eval(x)?);
            print!(
                "  x={x}: best {:.4} vs alpha {:.4} ({:.1} cells)",
                br.argmax_bid, br.equilibrium_bid, br.gap_cells
            );
        }
        println!();
    }
    Ok(())
}
