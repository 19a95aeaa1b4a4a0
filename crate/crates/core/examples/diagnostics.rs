//! Grid checks of affiliation and the monotonicity conditions, on built-in
//! and user-written densities.
//!
//! cargo run --example diagnostics

use forfeit_lab::model::{
    check_affiliation, check_density_increasing, check_lemma1, check_normalization,
    check_psi_increasing, parse_density, Conditionals, Family, SignalModel, ValueFn,
};
use forfeit_lab::numerics::make_grid;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let grid = make_grid(0.0, 1.0, 513)?;
    let custom = |src: &str| -> Result<SignalModel, Box<dyn std::error::Error>> {
        Ok(SignalModel::new(
            Family::Pair,
            2,
            (0.0, 1.0),
            parse_density(src)?,
            ValueFn::Private,
        )?)
    };
    for (name, model) in [
        ("uniform ipv", SignalModel::uniform_ipv(2)?),
        ("pair 4/5(1+xy)", SignalModel::affiliated_pair()),
        ("anti-affiliated 6/7(1+(x-y)^2)", custom("6/7*(1+(x-y)^2)")?),
        ("unnormalised 1+x*y", custom("1+x*y")?),
    ] {
        let cond = Conditionals::new(&model, &grid)?;
        println!("{name}");
        for report in [
            check_affiliation(&model, &grid),
            check_lemma1(&cond, &grid),
            check_psi_increasing(&cond, &grid),
            check_density_increasing(&cond, &grid),
            check_normalization(&cond),
        ] {
            println!("  {report}");
        }
    }
    Ok(())
}
