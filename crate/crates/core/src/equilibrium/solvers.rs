use log::warn;

use super::scheme::{BidStrategy, ForfeitScheme};
use super::SolveError;
use crate::model::{check_psi_increasing, Conditionals, Diagonal};
use crate::numerics::{cumulative_integral, rk4_solve, NumericsError, TabulatedFunction};

/// Smallest admissible denominator in the exponential-forfeit solvers.
pub const MIN_DENOMINATOR: f64 = 1e-12;
/// Default truncation below the top signal for the asymptotic exponential strategy.
pub const DEFAULT_TRUNCATION: f64 = 1e-3;

/// Full-forfeit all-pay auction: `alpha(x) = ∫ v(t,t) f_y1(t|t) dt`.
pub fn solve_classic(c: &Conditionals) -> Result<BidStrategy, SolveError> {
    let psi = check_psi_increasing(c, c.grid());
    if !psi.passed {
        warn!(
            "v(x,y) f(y|x) is not increasing in x (violation {:.3e}); \
             the tabulated strategy may not be an equilibrium",
            psi.max_violation
        );
    }
    BidStrategy::new(ForfeitScheme::Classic, classic_table(c)?)
}

fn classic_table(c: &Conditionals) -> Result<TabulatedFunction, SolveError> {
    let d = c.diagonal();
    let integrand = finite_products(d, |i| d.value[i] * d.density[i])?;
    Ok(cumulative_integral(&integrand, &d.grid)?)
}

/// First-price sealed-bid auction.
pub fn solve_first_price(c: &Conditionals) -> Result<BidStrategy, SolveError> {
    let d = c.diagonal();
    let table = discounted_integral(d, |big_f| big_f, 1.0)?;
    BidStrategy::new(ForfeitScheme::FirstPrice, table)
}

/// Constant entrance fee paid by everyone. The fee drops out of the
/// first-order condition, so the bid is the classic one.
pub fn solve_fee_kept(c: &Conditionals, fee: f64) -> Result<BidStrategy, SolveError> {
    let scheme = ForfeitScheme::FeeKept { fee };
    scheme.validate()?;
    let classic = solve_classic(c)?;
    BidStrategy::new(scheme, classic.table().clone())
}

/// Entrance fee refunded to the winner: `alpha' = (v(x,x) + fee) f_y1(x|x)`.
pub fn solve_fee_returned(c: &Conditionals, fee: f64) -> Result<BidStrategy, SolveError> {
    let scheme = ForfeitScheme::FeeReturned { fee };
    scheme.validate()?;
    let classic = solve_classic(c)?;
    let d = c.diagonal();
    let win_prob_growth = cumulative_integral(&d.density, &d.grid)?;
    let table = classic
        .table()
        .map_indexed(|i, a| a + fee * win_prob_growth.values()[i]);
    BidStrategy::new(scheme, table)
}

/// Losers forfeit `beta` times their bid.
///
/// `alpha(x) = ∫ v(s,s) r(s) exp(-(1-beta)(J(x) - J(s))) ds` with
/// `r = f_y1/(beta + (1-beta) F_y1)` on the diagonal and `J` its running integral.
pub fn solve_fractional(c: &Conditionals, beta: f64) -> Result<BidStrategy, SolveError> {
    let scheme = ForfeitScheme::Fractional { beta };
    scheme.validate()?;
    let d = c.diagonal();
    let table = discounted_integral(d, |big_f| beta + (1.0 - beta) * big_f, 1.0 - beta)?;
    BidStrategy::new(scheme, table)
}

/// Losers forfeit `exp(bid)`. Integrates
/// `alpha' = (v + e^alpha - alpha) f / (e^alpha + (1 - e^alpha) F)` from `alpha(lo) = 0`.
pub fn solve_exponential_ode(c: &Conditionals) -> Result<BidStrategy, SolveError> {
    let grid = c.grid();
    // RK4 half steps land on nodes of the refined grid
    let fine = grid.refined();
    let d = c.diagonal_on(&fine)?;
    let dens = TabulatedFunction::new(fine.clone(), d.density)?;
    let cdf = TabulatedFunction::new(fine.clone(), d.cdf)?;
    let value = TabulatedFunction::new(fine, d.value)?;
    let rhs = |x: f64, a: f64| -> Result<f64, NumericsError> {
        let f = dens.eval_clamped(x);
        let big_f = cdf.eval_clamped(x);
        let v = value.eval_clamped(x);
        let ea = a.exp();
        let den = ea + (1.0 - ea) * big_f;
        if den.is_nan() || den < MIN_DENOMINATOR {
            return Err(NumericsError::SmallDenominator { x, value: den });
        }
        Ok((v + ea - a) * f / den)
    };
    let table = rk4_solve(rhs, grid.lo(), 0.0, grid)?;
    BidStrategy::new(ForfeitScheme::Exponential, table)
}

/// Large-bid approximation of the exponential-forfeit strategy,
/// `alpha(x) ≈ ∫ f_y1(t|t) / (1 - F_y1(t|t)) dt`, on `[lo, hi - delta]`.
/// The value function never enters.
pub fn solve_exponential_asymptotic(
    c: &Conditionals,
    delta: f64,
) -> Result<BidStrategy, SolveError> {
    if !(delta > 0.0 && delta < c.grid().hi() - c.grid().lo()) {
        return Err(SolveError::InvalidParameter(format!(
            "truncation delta must lie inside the support width, got {delta}"
        )));
    }
    let grid = c.grid().truncated_top(delta)?;
    let d = c.diagonal_on(&grid)?;
    let mut integrand = Vec::with_capacity(grid.len());
    for (i, &x) in grid.nodes().iter().enumerate() {
        let tail = 1.0 - d.cdf[i];
        if tail < MIN_DENOMINATOR {
            return Err(SolveError::Unsolvable(format!(
                "1 - F(x|x) = {tail:e} at x = {x} inside the truncated domain; increase delta"
            )));
        }
        integrand.push(d.density[i] / tail);
    }
    let table = cumulative_integral(&integrand, &grid)?;
    BidStrategy::new(ForfeitScheme::Exponential, table)
}

/// Solve any scheme; the exponential scheme uses the ODE solver.
pub fn solve(c: &Conditionals, scheme: ForfeitScheme) -> Result<BidStrategy, SolveError> {
    match scheme {
        ForfeitScheme::Classic => solve_classic(c),
        ForfeitScheme::FirstPrice => solve_first_price(c),
        ForfeitScheme::FeeKept { fee } => solve_fee_kept(c, fee),
        ForfeitScheme::FeeReturned { fee } => solve_fee_returned(c, fee),
        ForfeitScheme::Fractional { beta } => solve_fractional(c, beta),
        ForfeitScheme::Exponential => solve_exponential_ode(c),
    }
}

/// `∫ r` over the cell `[t_{i-1}, t_i]`, treating `r (t - lo)` as linear.
fn cell_increment(ratio: &[f64], i: usize, h: f64) -> f64 {
    let (ra, rb) = (ratio[i - 1], ratio[i]);
    if !rb.is_finite() || (i > 1 && !ra.is_finite()) {
        return f64::INFINITY;
    }
    let a = (i - 1) as f64 * h;
    let qa = if i == 1 {
        // pole at the edge: log-divergent cell
        if !ra.is_finite() {
            return f64::INFINITY;
        }
        0.0
    } else {
        ra * a
    };
    let qb = rb * (a + h);
    let slope = (qb - qa) / h;
    if i == 1 {
        return slope * h;
    }
    (qa - slope * a) * (h / a).ln_1p() + slope * h
}

fn finite_products(d: &Diagonal, f: impl Fn(usize) -> f64) -> Result<Vec<f64>, SolveError> {
    (0..d.grid.len())
        .map(|i| {
            let v = f(i);
            if v.is_finite() {
                Ok(v)
            } else {
                Err(SolveError::NonFinite {
                    x: d.grid.nodes()[i],
                })
            }
        })
        .collect()
}

/// `A(x) = ∫_lo^x v(s) r(s) exp(-decay (R(x) - R(s))) ds` where
/// `r = f / denom(F)` and `R` is the running integral of `r`.
///
/// Evaluated by the exact one-step recurrence
/// `A_i = exp(-decay ΔR_i) (A_{i-1} + h/2 g_{i-1}) + h/2 g_i`, which is the
/// trapezoid rule in `s` applied to every `x_i` at once. Nodes where the
/// denominator vanishes carry a divergent `R`; their contribution is zero.
///
/// `r` may blow up like `k / (t - lo)` at the lower edge (first-price and
/// small `beta`), so each `ΔR_i` integrates `q(t) / (t - lo)` with
/// `q = r (t - lo)` linear on the cell. That is exact for the pure pole and
/// second order for smooth `r`.
fn discounted_integral(
    d: &Diagonal,
    denom: impl Fn(f64) -> f64,
    decay: f64,
) -> Result<TabulatedFunction, SolveError> {
    let h = d.grid.spacing();
    let n = d.grid.len();
    let mut ratio = Vec::with_capacity(n);
    for i in 0..n {
        let den = denom(d.cdf[i]);
        let r = if den > 0.0 {
            d.density[i] / den
        } else if i == 0 || d.density[i] == 0.0 {
            f64::INFINITY
        } else {
            return Err(SolveError::DivisionByZero {
                x: d.grid.nodes()[i],
            });
        };
        if r.is_nan() {
            return Err(SolveError::NonFinite {
                x: d.grid.nodes()[i],
            });
        }
        ratio.push(r);
    }
    let weighted = |i: usize| {
        if ratio[i].is_finite() {
            d.value[i] * ratio[i]
        } else {
            0.0
        }
    };
    let mut out = Vec::with_capacity(n);
    let mut acc = 0.0;
    out.push(acc);
    for i in 1..n {
        let factor = if decay == 0.0 {
            1.0
        } else {
            (-decay * cell_increment(&ratio, i, h)).exp()
        };
        acc = factor * (acc + 0.5 * h * weighted(i - 1)) + 0.5 * h * weighted(i);
        if !acc.is_finite() {
            return Err(SolveError::NonFinite {
                x: d.grid.nodes()[i],
            });
        }
        out.push(acc);
    }
    Ok(TabulatedFunction::new(d.grid.clone(), out)?)
}
