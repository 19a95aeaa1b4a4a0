use crate::equilibrium::ForfeitScheme;

/// Realised payoff `W` of one bidder: the value (shared among tied top
/// bidders) minus the winner's payment, or minus the forfeit when outbid.
pub fn payoff_w(scheme: ForfeitScheme, own_bid: f64, own_value: f64, rival_bids: &[f64]) -> f64 {
    let top_rival = rival_bids.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if own_bid > top_rival {
        own_value - scheme.winner_payment(own_bid)
    } else if own_bid < top_rival {
        -scheme.loser_payment(own_bid)
    } else {
        let tied = 1 + rival_bids.iter().filter(|&&b| b == own_bid).count();
        own_value / tied as f64 - scheme.winner_payment(own_bid)
    }
}

/// One sealed-bid round: who won, who paid what, who got what.
#[derive(Debug, Clone, PartialEq)]
pub struct AuctionOutcome {
    pub bids: Vec<f64>,
    pub values: Vec<f64>,
    /// Lowest index among the highest bidders.
    pub winner_index: usize,
    /// Number of bidders sharing the highest bid.
    pub tie_count: usize,
    pub payments: Vec<f64>,
    pub payoffs: Vec<f64>,
}

impl AuctionOutcome {
    /// Settle a round. `values[i]` is what the object is worth to bidder `i`.
    pub fn resolve(scheme: ForfeitScheme, bids: &[f64], values: &[f64]) -> AuctionOutcome {
        assert_eq!(bids.len(), values.len(), "one value per bid");
        let top = bids.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let winner_index = bids.iter().position(|&b| b == top).unwrap_or(0);
        let tie_count = bids.iter().filter(|&&b| b == top).count();
        let mut payments = Vec::with_capacity(bids.len());
        let mut payoffs = Vec::with_capacity(bids.len());
        for (&b, &v) in bids.iter().zip(values) {
            if b == top {
                let pay = scheme.winner_payment(b);
                payments.push(pay);
                payoffs.push(v / tie_count as f64 - pay);
            } else {
                let pay = scheme.loser_payment(b);
                payments.push(pay);
                payoffs.push(-pay);
            }
        }
        AuctionOutcome {
            bids: bids.to_vec(),
            values: values.to_vec(),
            winner_index,
            tie_count,
            payments,
            payoffs,
        }
    }

    /// Everything the seller collects.
    pub fn revenue(&self) -> f64 {
        self.payments.iter().sum()
    }
}
