//! Expected payments under fractional forfeits compared with the full
//! (classic) forfeit.
//!
//! cargo run --example revenue_ordering

use forfeit_lab::equilibrium::{expected_payment, expected_revenue, solve_fractional};
use forfeit_lab::model::{check_density_increasing, Conditionals, SignalModel};
use forfeit_lab::numerics::make_grid;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let grid = make_grid(0.0, 1.0, 2049)?;
    for (name, model) in [
        ("uniform ipv", SignalModel::uniform_ipv(2)?),
        ("pair 4/5(1+xy)", SignalModel::affiliated_pair()),
    ] {
        let cond = Conditionals::new(&model, &grid)?;
        println!("{name}: {}", check_density_increasing(&cond, &grid));
        let full = solve_fractional(&cond, 1.0)?;
        let e_full = expected_payment(&cond, 1.0, &full)?;
        for beta in [0.0, 0.25, 0.5, 0.75, 1.0] {
            let alpha = solve_fractional(&cond, beta)?;
            let e = expected_payment(&cond, beta, &alpha)?;
            let excess = e
                .values()
                .iter()
                .zip(e_full.values())
                .map(|(a, b)| a - b)
                .fold(f64::NEG_INFINITY, f64::max);
            println!(
                "  beta = {beta:<4} revenue {:.6}  max(e_beta - e_1) = {excess:+.2e}",
                expected_revenue(&cond, &alpha)?
            );
        }
    }
    Ok(())
}
