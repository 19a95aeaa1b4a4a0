use forfeit_lab::cli::{format_number, SchemeSpec};
use forfeit_lab::equilibrium::{solve_fractional, ForfeitScheme};
use forfeit_lab::model::{parse_density, Conditionals, SignalModel};
use forfeit_lab::numerics::{make_grid, MonotoneCubic, TabulatedFunction};
use forfeit_lab::simulate::{payoff_w, AuctionOutcome};
use proptest::prelude::*;

proptest! {
    #[test]
    fn table_inverse_round_trips(a in 0.1f64..5.0, p in 1.0f64..3.0, x in 0.0f64..=1.0) {
        let g = make_grid(0.0, 1.0, 257).unwrap();
        let t = TabulatedFunction::from_fn(g, |s| a * s + s.powf(p));
        let y = t.eval(x).unwrap();
        prop_assert!((t.inverse(y).unwrap() - x).abs() < 1e-12);
        let m = MonotoneCubic::new(&t).unwrap();
        prop_assert!((m.inverse(m.eval(x)).unwrap() - x).abs() < 1e-10);
    }

    #[test]
    fn formatted_numbers_parse_back_to_twelve_digits(x in -1e6f64..1e6) {
        let back: f64 = format_number(x).parse().unwrap();
        prop_assert!((back - x).abs() <= 1e-11 * x.abs().max(1e-300));
    }

    #[test]
    fn exactly_one_payoff_case_applies(
        own in 0u8..5,
        rivals in proptest::collection::vec(0u8..5, 1..4),
        value in 0.0f64..3.0,
        beta in 0.0f64..=1.0,
    ) {
        let scheme = ForfeitScheme::Fractional { beta };
        let own = own as f64 / 2.0;
        let rivals: Vec<f64> = rivals.iter().map(|&r| r as f64 / 2.0).collect();
        let top = rivals.iter().copied().fold(f64::MIN, f64::max);
        let w = payoff_w(scheme, own, value, &rivals);
        if own > top {
            prop_assert_eq!(w, value - own);
        } else if own < top {
            prop_assert_eq!(w, -beta * own);
        } else {
            let k = 1 + rivals.iter().filter(|&&r| r == own).count();
            prop_assert!((w - (value / k as f64 - own)).abs() < 1e-12);
        }
        let mut bids = vec![own];
        bids.extend(&rivals);
        let values = vec![value; bids.len()];
        let o = AuctionOutcome::resolve(scheme, &bids, &values);
        prop_assert!((o.payoffs[0] - w).abs() < 1e-12);
    }

    #[test]
    fn scheme_specs_round_trip(fee in 0.0f64..10.0, beta in 0.0f64..=1.0) {
        for s in [format!("fee-kept:{fee}"), format!("fee-returned:{fee}"), format!("fractional:{beta}")] {
            let spec: SchemeSpec = s.parse().unwrap();
            prop_assert_eq!(spec.to_string(), s);
        }
    }

    #[test]
    fn density_printing_round_trips(a in 0u32..50, b in 1u32..9, c in 0u32..4) {
        let src = format!("{a}/{b}*(1+x*y)^{c} - x/({b}+y)");
        let e = parse_density(&src).unwrap();
        prop_assert_eq!(parse_density(&e.to_string()).unwrap(), e);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn fractional_bids_decrease_in_beta_on_uniform(b1 in 0.0f64..=1.0, b2 in 0.0f64..=1.0) {
        // alpha_beta(x) = x^2 / (2 (beta + (1 - beta) x)) falls as beta rises for x < 1
        let (lo, hi) = if b1 <= b2 { (b1, b2) } else { (b2, b1) };
        let g = make_grid(0.0, 1.0, 257).unwrap();
        let c = Conditionals::new(&SignalModel::uniform_ipv(2).unwrap(), &g).unwrap();
        let a_lo = solve_fractional(&c, lo).unwrap();
        let a_hi = solve_fractional(&c, hi).unwrap();
        for (x, y) in a_lo.values().iter().zip(a_hi.values()) {
            prop_assert!(*x >= y - 1e-12);
        }
    }
}
