//! Simulated auctions against the quadrature revenue.
//!
//! cargo run --release --example monte_carlo

use forfeit_lab::equilibrium::{expected_revenue, solve, ForfeitScheme};
use forfeit_lab::model::{Conditionals, SignalModel};
use forfeit_lab::numerics::make_grid;
use forfeit_lab::simulate::{run_auctions, SimulationConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let grid = make_grid(0.0, 1.0, 2049)?;
    let config = SimulationConfig {
        trials: 100_000,
        seed: 42,
        partitions: 4,
        ..SimulationConfig::default()
    };
    for (name, model) in [
        ("uniform ipv, 3 bidders", SignalModel::uniform_ipv(3)?),
        ("pair 4/5(1+xy)", SignalModel::affiliated_pair()),
    ] {
        let cond = Conditionals::new(&model, &grid)?;
        println!("{name}");
        for scheme in [
            ForfeitScheme::Classic,
            ForfeitScheme::FeeKept { fee: 0.25 },
            ForfeitScheme::Fractional { beta: 0.5 },
            ForfeitScheme::Exponential,
        ] {
            let alpha = solve(&cond, scheme)?;
            let report = run_auctions(&cond, &alpha, &config)?;
            let exact = expected_revenue(&cond, &alpha)?;
            println!(
                "  {:<16} simulated {:.5} ± {:.5}, quadrature {exact:.5}",
                scheme.to_string(),
                report.seller_revenue_mean,
                report.seller_revenue_stderr
            );
        }
    }
    Ok(())
}
