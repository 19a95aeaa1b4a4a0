use std::io::Write;

use super::config::RunConfig;
use super::csv::{format_number, CsvWriter};
use super::scheme_spec::SchemeSpec;
use super::CliError;
use crate::equilibrium::{
    expected_payment_for_scheme, expected_revenue, solve, solve_exponential_asymptotic, BidStrategy,
};
use crate::model::{
    check_affiliation, check_density_increasing, check_lemma1, check_normalization,
    check_psi_increasing, Conditionals,
};
use crate::simulate::{best_response_scan, default_bid_grid, payoff_curve, run_auctions};

/// What a command reports besides its main output, and whether it succeeded.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CommandOutcome {
    pub success: bool,
    /// Human-readable lines meant for the terminal.
    pub messages: Vec<String>,
}

impl CommandOutcome {
    fn ok(messages: Vec<String>) -> Self {
        CommandOutcome {
            success: true,
            messages,
        }
    }

    /// 0 on success, 1 when a check or scan failed.
    pub fn exit_code(&self) -> i32 {
        if self.success {
            0
        } else {
            1
        }
    }
}

/// Solve one scheme on the config's model and grid.
pub fn solve_spec(
    cfg: &RunConfig,
    c: &Conditionals,
    spec: SchemeSpec,
) -> Result<BidStrategy, CliError> {
    Ok(match spec {
        SchemeSpec::Scheme(s) => solve(c, s)?,
        SchemeSpec::ExponentialAsymptotic => {
            solve_exponential_asymptotic(c, cfg.numerics.delta_truncation)?
        }
    })
}

/// `x,alpha` at every node of the strategy's grid.
pub fn cmd_solve(
    cfg: &RunConfig,
    spec: SchemeSpec,
    out: &mut dyn Write,
) -> Result<CommandOutcome, CliError> {
    let c = cfg.conditionals()?;
    let alpha = solve_spec(cfg, &c, spec)?;
    let mut w = CsvWriter::new(out);
    w.header(&["x", "alpha"])?;
    for (&x, &a) in alpha.grid().nodes().iter().zip(alpha.values()) {
        w.row(&[x, a])?;
    }
    Ok(CommandOutcome::ok(vec![format!(
        "{spec}: {} nodes, alpha(hi) = {}",
        alpha.grid().len(),
        format_number(alpha.max_bid())
    )]))
}

/// Expected payments of several schemes side by side, then a `revenue` row.
///
/// Schemes outside the classic/first-price/fractional family take their
/// revenue from simulation; a comment line flags each such column.
pub fn cmd_compare(
    cfg: &RunConfig,
    specs: &[SchemeSpec],
    out: &mut dyn Write,
) -> Result<CommandOutcome, CliError> {
    if specs.len() < 2 {
        return Err(CliError::Usage("need at least two schemes".into()));
    }
    let c = cfg.conditionals()?;
    let sim = cfg.simulation_config();
    let mut columns = Vec::with_capacity(specs.len());
    let mut revenues = Vec::with_capacity(specs.len());
    let mut flags = Vec::new();
    for &spec in specs {
        let alpha = solve_spec(cfg, &c, spec)?;
        let payments = expected_payment_for_scheme(&c, &alpha)?;
        if spec.is_fractional_family() {
            revenues.push(expected_revenue(&c, &alpha)?);
        } else {
            let report = run_auctions(&c, &alpha, &sim)?;
            revenues.push(report.seller_revenue_mean);
            flags.push(format!(
                "e_{spec}: revenue simulated over {} trials (seed {}), stderr {}",
                sim.trials,
                sim.seed,
                format_number(report.seller_revenue_stderr)
            ));
        }
        if alpha.grid() != c.grid() {
            flags.push(format!(
                "e_{spec}: payments held constant above x = {}",
                format_number(alpha.grid().hi())
            ));
        }
        columns.push(payments);
    }

    let mut w = CsvWriter::new(out);
    let mut header = vec!["x".to_string()];
    header.extend(specs.iter().map(|s| format!("e_{s}")));
    w.header(&header)?;
    let mut row = vec![0.0; specs.len() + 1];
    for &x in c.grid().nodes() {
        row[0] = x;
        for (slot, col) in row[1..].iter_mut().zip(&columns) {
            *slot = col.eval_clamped(x);
        }
        w.row(&row)?;
    }
    w.labelled_row("revenue", &revenues)?;
    for f in &flags {
        w.comment(f)?;
    }
    let messages = specs
        .iter()
        .zip(&revenues)
        .map(|(s, r)| format!("{s}: expected revenue {}", format_number(*r)))
        .collect();
    Ok(CommandOutcome::ok(messages))
}

/// Monte Carlo run of one scheme; one CSV row of report fields.
pub fn cmd_simulate(
    cfg: &RunConfig,
    spec: SchemeSpec,
    out: &mut dyn Write,
) -> Result<CommandOutcome, CliError> {
    let c = cfg.conditionals()?;
    let alpha = solve_spec(cfg, &c, spec)?;
    let report = run_auctions(&c, &alpha, &cfg.simulation_config())?;
    let mut w = CsvWriter::new(out);
    w.header(&[
        "scheme",
        "trials",
        "partitions",
        "seed",
        "revenue_mean",
        "revenue_stderr",
        "bidder_payoff_mean",
        "best_response_max_gap",
        "acceptance_rate",
    ])?;
    w.text_row(&[
        spec.to_string(),
        report.trials.to_string(),
        report.partitions.to_string(),
        report.seed.to_string(),
        format_number(report.seller_revenue_mean),
        format_number(report.seller_revenue_stderr),
        format_number(report.bidder_payoff_mean),
        format_number(report.best_response_max_gap),
        format_number(report.acceptance_rate),
    ])?;
    Ok(CommandOutcome::ok(vec![format!(
        "{spec}: revenue {} ± {} (mean ± stderr, {} trials), best-response max gap {}",
        format_number(report.seller_revenue_mean),
        format_number(report.seller_revenue_stderr),
        report.trials,
        format_number(report.best_response_max_gap)
    )]))
}

/// Expected payoff of every deviation bid at signal `x`; fails when the
/// best bid is more than two grid cells from the equilibrium bid.
pub fn cmd_best_response(
    cfg: &RunConfig,
    spec: SchemeSpec,
    x: f64,
    out: &mut dyn Write,
) -> Result<CommandOutcome, CliError> {
    let c = cfg.conditionals()?;
    let alpha = solve_spec(cfg, &c, spec)?;
    if !alpha.grid().contains(x) {
        return Err(CliError::Usage(format!(
            "signal {x} outside [{}, {}]",
            alpha.grid().lo(),
            alpha.grid().hi()
        )));
    }
    let bids = default_bid_grid(&alpha, cfg.numerics.bid_grid_nodes)?;
    let curve = payoff_curve(&c, &alpha, x, &bids)?;
    let br = best_response_scan(&curve, alpha.eval(x)?);
    let mut w = CsvWriter::new(out);
    w.header(&["bid", "payoff"])?;
    for (&b, &p) in bids.nodes().iter().zip(curve.values()) {
        w.row(&[b, p])?;
    }
    Ok(CommandOutcome {
        success: br.passed,
        messages: vec![format!(
            "{spec} at x = {}: best bid {}, equilibrium bid {}, gap {} cells {}",
            format_number(x),
            format_number(br.argmax_bid),
            format_number(br.equilibrium_bid),
            format_number(br.gap_cells),
            if br.passed { "PASS" } else { "FAIL" }
        )],
    })
}

/// Hypothesis diagnostics, one line each. Succeeds iff every required check passes.
pub fn cmd_check(cfg: &RunConfig, out: &mut dyn Write) -> Result<CommandOutcome, CliError> {
    let model = cfg.signal_model()?;
    let grid = cfg.grid()?;
    let c = cfg.conditionals()?;
    let required = [
        check_affiliation(&model, &grid),
        check_lemma1(&c, &grid),
        check_psi_increasing(&c, &grid),
        check_normalization(&c),
    ];
    for r in &required {
        writeln!(out, "{r}")?;
    }
    // the revenue-ordering hypothesis is reported but does not decide the exit code
    writeln!(out, "info: {}", check_density_increasing(&c, &grid))?;
    let success = required.iter().all(|r| r.passed);
    writeln!(
        out,
        "{}",
        if success {
            "all checks passed"
        } else {
            "some checks failed"
        }
    )?;
    Ok(CommandOutcome {
        success,
        messages: Vec::new(),
    })
}
