//! Equilibrium bid functions for every forfeit scheme on the affiliated pair model.
//!
//! cargo run --example solve_schemes

use forfeit_lab::equilibrium::{solve, ForfeitScheme};
use forfeit_lab::model::{Conditionals, SignalModel};
use forfeit_lab::numerics::{make_grid, DEFAULT_GRID_NODES};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let grid = make_grid(0.0, 1.0, DEFAULT_GRID_NODES)?;
    let cond = Conditionals::new(&SignalModel::affiliated_pair(), &grid)?;
    let schemes = [
        ForfeitScheme::Classic,
        ForfeitScheme::FirstPrice,
        ForfeitScheme::FeeKept { fee: 0.5 },
        ForfeitScheme::FeeReturned { fee: 0.1 },
        ForfeitScheme::Fractional { beta: 0.5 },
        ForfeitScheme::Exponential,
    ];
    let strategies = schemes
        .iter()
        .map(|&s| solve(&cond, s))
        .collect::<Result<Vec<_>, _>>()?;

    print!("{:>5}", "x");
    for s in &schemes {
        print!(" {:>15}", s.to_string());
    }
    println!();
    for x in [0.1, 0.25, 0.5, 0.75, 0.9, 1.0] {
        print!("{x:>5.2}");
        for alpha in &strategies {
            print!(" {:>15.6}", alpha.eval(x)?);
        }
        println!();
    }
    Ok(())
}
