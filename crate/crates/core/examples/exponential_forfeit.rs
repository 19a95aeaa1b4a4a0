//! Losers forfeit e^bid. The exact strategy solves an ODE; for large values
//! it approaches a v-independent integral that tracks -ln(1 - x).
//!
//! cargo run --example exponential_forfeit

use forfeit_lab::equilibrium::{
    solve_exponential_asymptotic, solve_exponential_ode, DEFAULT_TRUNCATION,
};
use forfeit_lab::model::{parse_density, Conditionals, SignalModel, ValueFn};
use forfeit_lab::numerics::make_grid;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let grid = make_grid(0.0, 1.0, 2049)?;
    let model = SignalModel::affiliated_pair();
    let cond = Conditionals::new(&model, &grid)?;
    let ode = solve_exponential_ode(&cond)?;
    let asym = solve_exponential_asymptotic(&cond, DEFAULT_TRUNCATION)?;
    let rich = model.with_value(ValueFn::Expr(parse_density("100*x")?));
    let ode_rich = solve_exponential_ode(&Conditionals::new(&rich, &grid)?)?;

    println!(
        "{:>5} {:>12} {:>12} {:>12} {:>12}",
        "x", "ode v=x", "ode v=100x", "asymptotic", "-ln(1-x)"
    );
    for x in [0.1, 0.3, 0.5, 0.7, 0.9, 0.99] {
        println!(
            "{x:>5.2} {:>12.6} {:>12.6} {:>12.6} {:>12.6}",
            ode.eval(x)?,
            ode_rich.eval(x)?,
            asym.eval(x)?,
            -(1.0 - x).ln()
        );
    }
    Ok(())
}
