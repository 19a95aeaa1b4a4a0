//! Grid checks of the hypotheses the equilibrium results rely on. None of
//! these is a proof; each samples the relevant inequality on a coarse grid.

use std::fmt;

use super::conditionals::{Conditionals, NORMALIZATION_TOLERANCE};
use super::signal::{Family, SignalModel};
use super::ModelError;
use crate::numerics::Grid;

/// Per-axis cap on the sub-grid used by the checks.
pub const MAX_CHECK_POINTS: usize = 64;
/// Largest tolerated violation of a sampled inequality.
pub const CHECK_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct DiagnosticReport {
    pub name: &'static str,
    pub passed: bool,
    /// Largest amount by which the sampled inequality was violated (0 if never).
    pub max_violation: f64,
    pub points_checked: usize,
    pub note: Option<String>,
}

impl DiagnosticReport {
    fn from_violation(name: &'static str, max_violation: f64, points_checked: usize) -> Self {
        DiagnosticReport {
            name,
            passed: max_violation <= CHECK_TOLERANCE,
            max_violation,
            points_checked,
            note: None,
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

impl fmt::Display for DiagnosticReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<28} {}  max violation {:.3e} over {} points",
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.max_violation,
            self.points_checked
        )?;
        if let Some(note) = &self.note {
            write!(f, " ({note})")?;
        }
        Ok(())
    }
}

/// `f(z ∨ z') f(z ∧ z') >= f(z) f(z')` on all pairs of sub-grid points.
pub fn check_affiliation(m: &SignalModel, g: &Grid) -> DiagnosticReport {
    const NAME: &str = "affiliation";
    if m.family() == Family::Ipv {
        return DiagnosticReport::from_violation(NAME, 0.0, 0)
            .with_note("independent signals are affiliated by construction");
    }
    let coarse = g.coarsened(MAX_CHECK_POINTS);
    let pts = coarse.nodes();
    let n = pts.len();
    let mut dens = vec![0.0; n * n];
    for (i, &x) in pts.iter().enumerate() {
        for (j, &y) in pts.iter().enumerate() {
            match m.density_at(x, y) {
                Ok(d) => dens[i * n + j] = d,
                Err(e) => {
                    return DiagnosticReport {
                        name: NAME,
                        passed: false,
                        max_violation: f64::INFINITY,
                        points_checked: 0,
                        note: Some(format!("density evaluation failed: {e}")),
                    }
                }
            }
        }
    }
    // scale to unit mass so violations are comparable across models
    let w = |i: usize| if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
    let mut mass = 0.0;
    for i in 0..n {
        for j in 0..n {
            mass += w(i) * w(j) * dens[i * n + j];
        }
    }
    mass *= coarse.spacing() * coarse.spacing();
    let scale = if mass > 0.0 { 1.0 / (mass * mass) } else { 1.0 };
    let at = |i: usize, j: usize| dens[i * n + j];
    let mut worst = 0.0f64;
    let mut pairs = 0usize;
    // only pairs with i1 < i2 and j1 > j2 are non-trivial; the rest have
    // {join, meet} = {z, z'}
    for i1 in 0..n {
        for i2 in (i1 + 1)..n {
            for j2 in 0..n {
                for j1 in (j2 + 1)..n {
                    let lhs = at(i2, j1) * at(i1, j2);
                    let rhs = at(i1, j1) * at(i2, j2);
                    worst = worst.max((rhs - lhs) * scale);
                    pairs += 1;
                }
            }
        }
    }
    DiagnosticReport::from_violation(NAME, worst, pairs)
}

/// `F_y1(y|z) / f_y1(y|z)` is non-increasing in `z` for each fixed `y`.
pub fn check_lemma1(c: &Conditionals, g: &Grid) -> DiagnosticReport {
    const NAME: &str = "cdf/density ratio in z";
    scan_in_conditioning(c, g, NAME, |s, k| {
        let f = s.density[k];
        if f > 0.0 {
            Some(-(s.cdf[k] / f))
        } else {
            None
        }
    })
}

/// `psi(x, y) = v(x, y) f_y1(y|x)` is non-decreasing in `x` for each fixed `y`.
pub fn check_psi_increasing(c: &Conditionals, g: &Grid) -> DiagnosticReport {
    const NAME: &str = "psi increasing in x";
    scan_in_conditioning(c, g, NAME, |s, k| Some(s.value[k] * s.density[k]))
}

/// `f_y1(y|x)` is non-decreasing in `x` for each fixed `y`, the hypothesis of
/// the revenue ordering between fractional and full forfeits.
pub fn check_density_increasing(c: &Conditionals, g: &Grid) -> DiagnosticReport {
    const NAME: &str = "f(y|x) increasing in x";
    scan_in_conditioning(c, g, NAME, |s, k| Some(s.density[k]))
}

/// Declared density integrates to one within the normalisation tolerance.
pub fn check_normalization(c: &Conditionals) -> DiagnosticReport {
    let err = (c.total_mass() - 1.0).abs();
    DiagnosticReport {
        name: "density normalization",
        passed: err <= NORMALIZATION_TOLERANCE,
        max_violation: err,
        points_checked: c.grid().len(),
        note: Some(format!("total mass {:.6}", c.total_mass())),
    }
}

/// Walk the conditioning variable over a coarse grid and require `quantity`
/// to be non-decreasing in it, at every coarse `y`.
fn scan_in_conditioning(
    c: &Conditionals,
    g: &Grid,
    name: &'static str,
    quantity: impl Fn(&super::ConditionalSlice, usize) -> Option<f64>,
) -> DiagnosticReport {
    let coarse = g.coarsened(MAX_CHECK_POINTS);
    let fine = c.grid();
    let ys: Vec<usize> = coarse
        .nodes()
        .iter()
        .map(|&y| nearest_node(fine, y))
        .collect();
    let mut previous: Option<Vec<Option<f64>>> = None;
    let mut worst = 0.0f64;
    let mut checked = 0usize;
    for &z in coarse.nodes() {
        let slice = match c.slice(z) {
            Ok(s) => s,
            Err(e) => return failed(name, e),
        };
        let current: Vec<Option<f64>> = ys.iter().map(|&k| quantity(&slice, k)).collect();
        if let Some(prev) = &previous {
            for (a, b) in prev.iter().zip(&current) {
                if let (Some(a), Some(b)) = (a, b) {
                    worst = worst.max(a - b);
                    checked += 1;
                }
            }
        }
        previous = Some(current);
    }
    DiagnosticReport::from_violation(name, worst, checked)
}

fn nearest_node(grid: &Grid, y: f64) -> usize {
    let k = ((y - grid.lo()) / grid.spacing()).round() as usize;
    k.min(grid.len() - 1)
}

fn failed(name: &'static str, e: ModelError) -> DiagnosticReport {
    DiagnosticReport {
        name,
        passed: false,
        max_violation: f64::INFINITY,
        points_checked: 0,
        note: Some(e.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{parse_density, ValueFn};
    use crate::numerics::make_grid;

    fn pair(src: &str) -> SignalModel {
        SignalModel::new(
            Family::Pair,
            2,
            (0.0, 1.0),
            parse_density(src).unwrap(),
            ValueFn::Private,
        )
        .unwrap()
    }

    #[test]
    fn affine_product_density_is_affiliated() {
        let g = make_grid(0.0, 1.0, 513).unwrap();
        let r = check_affiliation(&pair("4/5*(1+x*y)"), &g);
        assert!(r.passed, "{r}");
        assert_eq!(r.max_violation, 0.0);
        assert!(r.points_checked > 0);
    }

    #[test]
    fn independent_uniform_holds_with_equality() {
        let g = make_grid(0.0, 1.0, 129).unwrap();
        let r = check_affiliation(&pair("1"), &g);
        assert!(r.passed);
        assert_eq!(r.max_violation, 0.0);
    }

    #[test]
    fn anti_affiliated_density_fails() {
        let g = make_grid(0.0, 1.0, 129).unwrap();
        let r = check_affiliation(&pair("6/7*(1+(x-y)^2)"), &g);
        assert!(!r.passed);
        // z = (1,0), z' = (0,1): f(z)f(z') - f(1,1)f(0,0) = (4 - 1)(6/7)^2
        let expected = 3.0 * (6.0f64 / 7.0).powi(2);
        assert!(r.max_violation >= expected * 0.99, "{}", r.max_violation);
    }

    #[test]
    fn lemma1_ratio() {
        let g = make_grid(0.0, 1.0, 1025).unwrap();
        let uni = Conditionals::new(&SignalModel::uniform_ipv(2).unwrap(), &g).unwrap();
        let r = check_lemma1(&uni, &g);
        assert!(r.passed);
        assert_eq!(r.max_violation, 0.0);

        let pc = Conditionals::new(&SignalModel::affiliated_pair(), &g).unwrap();
        assert!(check_lemma1(&pc, &g).passed);
    }

    #[test]
    fn lemma1_ratio_closed_form_decreases() {
        // brute-force the closed form (2y + z y^2)/(2 + 2 z y) over a grid
        for i in 0..=40 {
            let y = i as f64 / 40.0;
            let mut last = f64::INFINITY;
            for k in 0..=40 {
                let z = k as f64 / 40.0;
                let r = (2.0 * y + z * y * y) / (2.0 + 2.0 * z * y);
                assert!(r <= last + 1e-15);
                last = r;
            }
        }
    }

    #[test]
    fn psi_checks() {
        let g = make_grid(0.0, 1.0, 513).unwrap();
        let uni = Conditionals::new(&SignalModel::uniform_ipv(2).unwrap(), &g).unwrap();
        assert!(check_psi_increasing(&uni, &g).passed);
        let pc = Conditionals::new(&SignalModel::affiliated_pair(), &g).unwrap();
        assert!(check_psi_increasing(&pc, &g).passed);

        let flat = SignalModel::uniform_ipv(2)
            .unwrap()
            .with_value(ValueFn::Expr(parse_density("1").unwrap()));
        let fc = Conditionals::new(&flat, &g).unwrap();
        let r = check_psi_increasing(&fc, &g);
        assert!(r.passed);
        assert_eq!(r.max_violation, 0.0);
    }

    #[test]
    fn density_monotonicity_hypothesis() {
        let g = make_grid(0.0, 1.0, 513).unwrap();
        let uni = Conditionals::new(&SignalModel::uniform_ipv(2).unwrap(), &g).unwrap();
        assert!(check_density_increasing(&uni, &g).passed);
        // (2 + 2xy)/(2 + x) has x-derivative (4y - 2)/(2 + x)^2, negative for y < 1/2
        let pc = Conditionals::new(&SignalModel::affiliated_pair(), &g).unwrap();
        assert!(!check_density_increasing(&pc, &g).passed);
    }

    #[test]
    fn normalization_report() {
        let g = make_grid(0.0, 1.0, 257).unwrap();
        let c = Conditionals::new(&pair("1+x*y"), &g).unwrap();
        assert!(!check_normalization(&c).passed);
        let c = Conditionals::new(&SignalModel::affiliated_pair(), &g).unwrap();
        assert!(check_normalization(&c).passed);
    }
}
