use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::curve::{best_response_scan, default_bid_grid, payoff_curve, DEFAULT_BID_GRID_NODES};
use super::payoff::AuctionOutcome;
use super::sampling::SignalSampler;
use super::SimulationError;
use crate::equilibrium::{BidStrategy, ForfeitScheme};
use crate::model::Conditionals;

/// Signals, as fractions of the support, at which best responses are scanned.
pub const BEST_RESPONSE_POINTS: [f64; 9] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationConfig {
    pub trials: usize,
    pub seed: u64,
    /// Independent RNG streams, each run on its own thread.
    pub partitions: usize,
    pub bid_grid_nodes: usize,
}

impl Default for SimulationConfig {
    fn default() -> Self {
        SimulationConfig {
            trials: 100_000,
            seed: 42,
            partitions: 1,
            bid_grid_nodes: DEFAULT_BID_GRID_NODES,
        }
    }
}

/// Summary of a batch of simulated auctions.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationReport {
    pub scheme: ForfeitScheme,
    pub trials: usize,
    pub partitions: usize,
    pub seed: u64,
    pub seller_revenue_mean: f64,
    pub seller_revenue_stderr: f64,
    /// Average realised payoff per bidder.
    pub bidder_payoff_mean: f64,
    /// Largest `|alpha^-1(best bid) - x|` over the scanned signals.
    pub best_response_max_gap: f64,
    pub acceptance_rate: f64,
}

impl fmt::Display for SimulationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "scheme={} trials={} partitions={} seed={} revenue={:.6}±{:.6} bidder_payoff={:.6} best_response_gap={:.3e}",
            self.scheme,
            self.trials,
            self.partitions,
            self.seed,
            self.seller_revenue_mean,
            self.seller_revenue_stderr,
            self.bidder_payoff_mean,
            self.best_response_max_gap,
        )
    }
}

/// Streaming mean and variance, mergeable across partitions.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RunningStats {
    count: u64,
    mean: f64,
    m2: f64,
}

impl RunningStats {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn merge(&mut self, other: &RunningStats) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = *other;
            return;
        }
        let n = (self.count + other.count) as f64;
        let delta = other.mean - self.mean;
        self.mean += delta * other.count as f64 / n;
        self.m2 += other.m2 + delta * delta * self.count as f64 * other.count as f64 / n;
        self.count += other.count;
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Unbiased sample variance.
    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            self.m2 / (self.count - 1) as f64
        }
    }

    pub fn stderr(&self) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            (self.variance() / self.count as f64).sqrt()
        }
    }
}

#[derive(Debug, Clone, Default)]
struct PartitionTotals {
    revenue: RunningStats,
    payoff: RunningStats,
    proposals: f64,
    accepted: f64,
}

fn run_partition(
    c: &Conditionals,
    alpha: &BidStrategy,
    trials: usize,
    seed: u64,
    stream: u64,
) -> Result<PartitionTotals, SimulationError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut sampler = SignalSampler::new(c)?;
    let n = sampler.n_bidders();
    let scheme = alpha.scheme();
    let mut signals = vec![0.0; n];
    let mut bids = vec![0.0; n];
    let mut values = vec![0.0; n];
    let mut totals = PartitionTotals::default();
    for _ in 0..trials {
        sampler.draw(&mut rng, &mut signals)?;
        for i in 0..n {
            bids[i] = alpha.table().eval_clamped(signals[i]);
            let top_rival = signals
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &s)| s)
                .fold(f64::NEG_INFINITY, f64::max);
            values[i] = c.value(signals[i], top_rival)?;
        }
        let outcome = AuctionOutcome::resolve(scheme, &bids, &values);
        totals.revenue.push(outcome.revenue());
        totals
            .payoff
            .push(outcome.payoffs.iter().sum::<f64>() / n as f64);
    }
    let rate = sampler.acceptance_rate();
    totals.proposals = sampler.proposals().max(trials as u64) as f64;
    totals.accepted = rate * totals.proposals;
    Ok(totals)
}

/// Simulate `config.trials` independent auctions where every bidder follows `alpha`.
///
/// Trials are split over `config.partitions` ChaCha streams of the same
/// seed, so output depends only on the seed and the partition count.
pub fn run_auctions(
    c: &Conditionals,
    alpha: &BidStrategy,
    config: &SimulationConfig,
) -> Result<SimulationReport, SimulationError> {
    if config.trials == 0 {
        return Err(SimulationError::InvalidConfig(
            "trials must be positive".into(),
        ));
    }
    if config.partitions == 0 {
        return Err(SimulationError::InvalidConfig(
            "partitions must be positive".into(),
        ));
    }
    let parts = config.partitions.min(config.trials);
    let base = config.trials / parts;
    let extra = config.trials % parts;
    let results: Vec<Result<PartitionTotals, SimulationError>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..parts)
            .map(|p| {
                let count = base + usize::from(p < extra);
                s.spawn(move || run_partition(c, alpha, count, config.seed, p as u64))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("simulation thread panicked"))
            .collect()
    });
    let mut revenue = RunningStats::default();
    let mut payoff = RunningStats::default();
    let (mut proposals, mut accepted) = (0.0, 0.0);
    for r in results {
        let t = r?;
        revenue.merge(&t.revenue);
        payoff.merge(&t.payoff);
        proposals += t.proposals;
        accepted += t.accepted;
    }
    Ok(SimulationReport {
        scheme: alpha.scheme(),
        trials: config.trials,
        partitions: parts,
        seed: config.seed,
        seller_revenue_mean: revenue.mean(),
        seller_revenue_stderr: revenue.stderr(),
        bidder_payoff_mean: payoff.mean(),
        best_response_max_gap: best_response_max_gap(c, alpha, config.bid_grid_nodes)?,
        acceptance_rate: accepted / proposals,
    })
}

/// Largest distance, in signal units, between each scanned signal and the
/// signal whose equilibrium bid is that signal's best response.
pub fn best_response_max_gap(
    c: &Conditionals,
    alpha: &BidStrategy,
    bid_grid_nodes: usize,
) -> Result<f64, SimulationError> {
    let bids = default_bid_grid(alpha, bid_grid_nodes)?;
    let (lo, hi) = (c.grid().lo(), c.grid().hi());
    let mut worst: f64 = 0.0;
    for frac in BEST_RESPONSE_POINTS {
        let x = lo + frac * (hi - lo);
        if !alpha.grid().contains(x) {
            continue;
        }
        let curve = payoff_curve(c, alpha, x, &bids)?;
        let br = best_response_scan(&curve, alpha.eval(x)?);
        let best = br.argmax_bid.clamp(alpha.values()[0], alpha.max_bid());
        worst = worst.max((alpha.inverse(best)? - x).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equilibrium::{expected_revenue, solve, solve_classic};
    use crate::model::SignalModel;
    use crate::numerics::make_grid;

    fn uniform() -> Conditionals {
        let g = make_grid(0.0, 1.0, 1025).unwrap();
        Conditionals::new(&SignalModel::uniform_ipv(2).unwrap(), &g).unwrap()
    }

    #[test]
    fn running_stats_merge_matches_single_pass() {
        let xs: Vec<f64> = (0..1000).map(|i| ((i * 37) % 101) as f64 / 7.0).collect();
        let mut whole = RunningStats::default();
        xs.iter().for_each(|&x| whole.push(x));
        let mut a = RunningStats::default();
        let mut b = RunningStats::default();
        xs[..313].iter().for_each(|&x| a.push(x));
        xs[313..].iter().for_each(|&x| b.push(x));
        a.merge(&b);
        assert_eq!(a.count(), 1000);
        assert!((a.mean() - whole.mean()).abs() < 1e-12);
        assert!((a.variance() - whole.variance()).abs() < 1e-9);
    }

    #[test]
    fn zero_trials_rejected() {
        let c = uniform();
        let alpha = solve_classic(&c).unwrap();
        let cfg = SimulationConfig {
            trials: 0,
            ..SimulationConfig::default()
        };
        let err = run_auctions(&c, &alpha, &cfg).unwrap_err();
        assert_eq!(err.to_string(), "trials must be positive");
    }

    #[test]
    fn classic_revenue_within_three_stderr() {
        let c = uniform();
        let alpha = solve_classic(&c).unwrap();
        let cfg = SimulationConfig {
            trials: 20_000,
            bid_grid_nodes: 1025,
            ..SimulationConfig::default()
        };
        let r = run_auctions(&c, &alpha, &cfg).unwrap();
        let exact = expected_revenue(&c, &alpha).unwrap();
        assert!(
            (r.seller_revenue_mean - exact).abs() < 3.0 * r.seller_revenue_stderr,
            "{r}"
        );
        assert!(r.best_response_max_gap < 0.01, "{r}");
    }

    #[test]
    fn reproducible_for_fixed_seed_and_partitions() {
        let c = uniform();
        let alpha = solve(&c, ForfeitScheme::Fractional { beta: 0.5 }).unwrap();
        let cfg = SimulationConfig {
            trials: 5_000,
            partitions: 4,
            bid_grid_nodes: 257,
            ..SimulationConfig::default()
        };
        let a = run_auctions(&c, &alpha, &cfg).unwrap();
        let b = run_auctions(&c, &alpha, &cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.partitions, 4);
    }

    #[test]
    fn fee_kept_adds_both_fees() {
        let c = uniform();
        let cfg = SimulationConfig {
            trials: 5_000,
            bid_grid_nodes: 257,
            ..SimulationConfig::default()
        };
        let classic = run_auctions(&c, &solve_classic(&c).unwrap(), &cfg).unwrap();
        let kept = run_auctions(
            &c,
            &solve(&c, ForfeitScheme::FeeKept { fee: 0.3 }).unwrap(),
            &cfg,
        )
        .unwrap();
        // identical draws and bids, so the difference is exact
        assert!((kept.seller_revenue_mean - classic.seller_revenue_mean - 0.6).abs() < 1e-9);
    }
}
