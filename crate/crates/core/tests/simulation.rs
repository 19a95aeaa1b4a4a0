use forfeit_lab::equilibrium::{expected_revenue, solve, solve_classic, ForfeitScheme};
use forfeit_lab::model::{Conditionals, SignalModel};
use forfeit_lab::numerics::make_grid;
use forfeit_lab::simulate::{
    best_response_max_gap, run_auctions, sample_signals, SimulationConfig,
};

fn cond(model: SignalModel, nodes: usize) -> Conditionals {
    let g = make_grid(0.0, 1.0, nodes).unwrap();
    Conditionals::new(&model, &g).unwrap()
}

#[test]
fn pair_signals_are_positively_correlated() {
    let c = cond(SignalModel::affiliated_pair(), 1025);
    let s = sample_signals(&c, 42, 200_000).unwrap();
    let n = s.len() as f64;
    let mx = s.iter().map(|p| p[0]).sum::<f64>() / n;
    let my = s.iter().map(|p| p[1]).sum::<f64>() / n;
    let cov = s.iter().map(|p| (p[0] - mx) * (p[1] - my)).sum::<f64>() / n;
    let vx = s.iter().map(|p| (p[0] - mx).powi(2)).sum::<f64>() / n;
    let vy = s.iter().map(|p| (p[1] - my).powi(2)).sum::<f64>() / n;
    let corr = cov / (vx * vy).sqrt();
    // cov = 1/225, var = 37/450
    let exact = (1.0 / 225.0) / (37.0 / 450.0);
    assert!(corr > 0.0);
    assert!((corr - exact).abs() < 0.01, "{corr} vs {exact}");
}

#[test]
fn simulated_revenue_matches_quadrature_across_schemes() {
    let cfg = SimulationConfig {
        trials: 50_000,
        seed: 42,
        partitions: 4,
        bid_grid_nodes: 1025,
    };
    for model in [
        SignalModel::uniform_ipv(3).unwrap(),
        SignalModel::affiliated_pair(),
    ] {
        let c = cond(model, 1025);
        for scheme in [
            ForfeitScheme::Classic,
            ForfeitScheme::FirstPrice,
            ForfeitScheme::Fractional { beta: 0.5 },
            ForfeitScheme::FeeReturned { fee: 0.1 },
            ForfeitScheme::Exponential,
        ] {
            let alpha = solve(&c, scheme).unwrap();
            let exact = expected_revenue(&c, &alpha).unwrap();
            let r = run_auctions(&c, &alpha, &cfg).unwrap();
            let z = (r.seller_revenue_mean - exact) / r.seller_revenue_stderr;
            assert!(z.abs() < 4.0, "{scheme}: {r} vs {exact}");
        }
    }
}

#[test]
fn partitions_change_streams_not_statistics() {
    let c = cond(SignalModel::uniform_ipv(2).unwrap(), 513);
    let alpha = solve_classic(&c).unwrap();
    let base = SimulationConfig {
        trials: 40_000,
        bid_grid_nodes: 257,
        ..SimulationConfig::default()
    };
    let one = run_auctions(&c, &alpha, &base).unwrap();
    let four = run_auctions(
        &c,
        &alpha,
        &SimulationConfig {
            partitions: 4,
            ..base
        },
    )
    .unwrap();
    assert_ne!(one.seller_revenue_mean, four.seller_revenue_mean);
    let se = one.seller_revenue_stderr.hypot(four.seller_revenue_stderr);
    assert!((one.seller_revenue_mean - four.seller_revenue_mean).abs() < 4.0 * se);
}

#[test]
fn equilibrium_payoff_is_nonnegative_without_fees() {
    // in equilibrium, bidding zero is always available and costs nothing under these schemes
    let c = cond(SignalModel::affiliated_pair(), 513);
    let cfg = SimulationConfig {
        trials: 20_000,
        bid_grid_nodes: 257,
        ..SimulationConfig::default()
    };
    for scheme in [
        ForfeitScheme::Classic,
        ForfeitScheme::FirstPrice,
        ForfeitScheme::Fractional { beta: 0.3 },
    ] {
        let r = run_auctions(&c, &solve(&c, scheme).unwrap(), &cfg).unwrap();
        assert!(r.bidder_payoff_mean > 0.0, "{r}");
    }
}

#[test]
fn best_response_gap_small_in_signal_units() {
    let c = cond(SignalModel::affiliated_pair(), 2049);
    for scheme in [ForfeitScheme::Classic, ForfeitScheme::Exponential] {
        let alpha = solve(&c, scheme).unwrap();
        let gap = best_response_max_gap(&c, &alpha, 4097).unwrap();
        assert!(gap < 2e-3, "{scheme}: {gap}");
    }
}
