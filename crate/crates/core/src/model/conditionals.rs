use log::warn;

use super::signal::{Family, SignalModel};
use super::ModelError;
use crate::numerics::{running_trapezoid, trapezoid_sum, Grid, TabulatedFunction};

/// Tolerance on the total mass of a density before it is rescaled with a warning.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-3;

/// Conditional law of the highest rival signal `Y1` given one's own signal
/// `x`, for a fixed model and grid.
#[derive(Debug, Clone)]
pub struct Conditionals {
    model: SignalModel,
    grid: Grid,
    total_mass: f64,
    marginal_pdf: Vec<f64>,
    diagonal: Diagonal,
    ipv: Option<IpvTables>,
}

/// `f_y1(t|t)`, `F_y1(t|t)` and `v(t, t)` sampled at the nodes of a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagonal {
    pub grid: Grid,
    pub density: Vec<f64>,
    pub cdf: Vec<f64>,
    pub value: Vec<f64>,
}

/// `f_y1(y|x)`, `F_y1(y|x)` and `v(x, y)` for one fixed `x`, at every grid node `y`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalSlice {
    pub x: f64,
    pub density: Vec<f64>,
    pub cdf: Vec<f64>,
    pub value: Vec<f64>,
}

#[derive(Debug, Clone)]
struct IpvTables {
    // normalised marginal density and CDF of one signal
    pdf: Vec<f64>,
    cdf: TabulatedFunction,
}

impl Conditionals {
    pub fn new(model: &SignalModel, grid: &Grid) -> Result<Self, ModelError> {
        let (lo, hi) = model.support();
        if grid.lo() != lo || grid.hi() != hi {
            return Err(ModelError::GridMismatch {
                lo: grid.lo(),
                hi: grid.hi(),
                support_lo: lo,
                support_hi: hi,
            });
        }
        match model.family() {
            Family::Ipv => Self::new_ipv(model, grid),
            Family::Pair => Self::new_pair(model, grid),
        }
    }

    fn new_ipv(model: &SignalModel, grid: &Grid) -> Result<Self, ModelError> {
        let mut raw = Vec::with_capacity(grid.len());
        for &x in grid.nodes() {
            let d = model.density_at(x, x)?;
            if d < 0.0 {
                return Err(ModelError::NegativeDensity { x, y: x, value: d });
            }
            raw.push(d);
        }
        let total_mass = trapezoid_sum(&raw, grid.spacing());
        if total_mass <= 0.0 {
            return Err(ModelError::Degenerate { x: grid.lo() });
        }
        warn_if_unnormalised(total_mass);
        let pdf: Vec<f64> = raw.iter().map(|d| d / total_mass).collect();
        let mut cdf = running_trapezoid(&pdf, grid.spacing());
        // pin the top to 1 exactly
        let top = *cdf.last().unwrap();
        cdf.iter_mut().for_each(|c| *c /= top);
        let cdf = TabulatedFunction::new(grid.clone(), cdf)?;

        let n = model.n_bidders() as i32;
        let mut diagonal = Diagonal {
            grid: grid.clone(),
            density: Vec::with_capacity(grid.len()),
            cdf: Vec::with_capacity(grid.len()),
            value: Vec::with_capacity(grid.len()),
        };
        for (i, &t) in grid.nodes().iter().enumerate() {
            let big_g = cdf.values()[i];
            diagonal
                .density
                .push((n - 1) as f64 * big_g.powi(n - 2) * pdf[i]);
            diagonal.cdf.push(big_g.powi(n - 1));
            diagonal.value.push(model.value(t, t)?);
        }
        Ok(Conditionals {
            model: model.clone(),
            grid: grid.clone(),
            total_mass,
            marginal_pdf: pdf.clone(),
            diagonal,
            ipv: Some(IpvTables { pdf, cdf }),
        })
    }

    fn new_pair(model: &SignalModel, grid: &Grid) -> Result<Self, ModelError> {
        let h = grid.spacing();
        let n = grid.len();
        let mut row_mass = Vec::with_capacity(n);
        let mut diagonal = Diagonal {
            grid: grid.clone(),
            density: Vec::with_capacity(n),
            cdf: Vec::with_capacity(n),
            value: Vec::with_capacity(n),
        };
        let mut row = vec![0.0; n];
        for (i, &x) in grid.nodes().iter().enumerate() {
            for (j, &y) in grid.nodes().iter().enumerate() {
                let d = model.density_at(x, y)?;
                if d < 0.0 {
                    return Err(ModelError::NegativeDensity { x, y, value: d });
                }
                row[j] = d;
            }
            let mass = trapezoid_sum(&row, h);
            if mass <= 0.0 {
                return Err(ModelError::Degenerate { x });
            }
            let below = if i == 0 {
                0.0
            } else {
                trapezoid_sum(&row[..=i], h)
            };
            row_mass.push(mass);
            diagonal.density.push(row[i] / mass);
            diagonal.cdf.push(below / mass);
            diagonal.value.push(model.value(x, x)?);
        }
        check_symmetry(model, grid)?;
        let total_mass = trapezoid_sum(&row_mass, h);
        warn_if_unnormalised(total_mass);
        let marginal_pdf = row_mass.iter().map(|m| m / total_mass).collect();
        Ok(Conditionals {
            model: model.clone(),
            grid: grid.clone(),
            total_mass,
            marginal_pdf,
            diagonal,
            ipv: None,
        })
    }

    pub fn model(&self) -> &SignalModel {
        &self.model
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn n_bidders(&self) -> usize {
        self.model.n_bidders()
    }

    /// Integral of the declared density over its support before rescaling.
    pub fn total_mass(&self) -> f64 {
        self.total_mass
    }

    /// Normalised marginal density of a single signal at the grid nodes.
    pub fn marginal_pdf(&self) -> &[f64] {
        &self.marginal_pdf
    }

    /// Values along `y = x` at the model grid nodes.
    pub fn diagonal(&self) -> &Diagonal {
        &self.diagonal
    }

    /// Values along `y = x` at the nodes of another grid inside the support.
    pub fn diagonal_on(&self, grid: &Grid) -> Result<Diagonal, ModelError> {
        let mut out = Diagonal {
            grid: grid.clone(),
            density: Vec::with_capacity(grid.len()),
            cdf: Vec::with_capacity(grid.len()),
            value: Vec::with_capacity(grid.len()),
        };
        for &t in grid.nodes() {
            out.density.push(self.f_y1(t, t)?);
            out.cdf.push(self.cdf_y1(t, t)?);
            out.value.push(self.model.value(t, t)?);
        }
        Ok(out)
    }

    /// Conditional quantities for one own-signal `x`, on the model grid.
    pub fn slice(&self, x: f64) -> Result<ConditionalSlice, ModelError> {
        self.check_inside(x)?;
        let nodes = self.grid.nodes();
        let value = nodes
            .iter()
            .map(|&y| self.model.value(x, y))
            .collect::<Result<Vec<_>, _>>()?;
        match &self.ipv {
            Some(t) => {
                let n = self.model.n_bidders() as i32;
                let density = t
                    .pdf
                    .iter()
                    .zip(t.cdf.values())
                    .map(|(&g, &big_g)| (n - 1) as f64 * big_g.powi(n - 2) * g)
                    .collect();
                let cdf = t.cdf.values().iter().map(|g| g.powi(n - 1)).collect();
                Ok(ConditionalSlice {
                    x,
                    density,
                    cdf,
                    value,
                })
            }
            None => {
                let raw = self.pair_row(x)?;
                let mass = trapezoid_sum(&raw, self.grid.spacing());
                if mass <= 0.0 {
                    return Err(ModelError::Degenerate { x });
                }
                let density: Vec<f64> = raw.iter().map(|d| d / mass).collect();
                let mut cdf = running_trapezoid(&density, self.grid.spacing());
                *cdf.last_mut().unwrap() = 1.0;
                Ok(ConditionalSlice {
                    x,
                    density,
                    cdf,
                    value,
                })
            }
        }
    }

    /// Conditional density `f_y1(y | x)`.
    pub fn f_y1(&self, y: f64, x: f64) -> Result<f64, ModelError> {
        self.check_inside(x)?;
        self.check_inside(y)?;
        match &self.ipv {
            Some(t) => {
                let n = self.model.n_bidders() as i32;
                let g = self.model.density_at(y, y)? / self.total_mass;
                Ok((n - 1) as f64 * t.cdf.eval_clamped(y).powi(n - 2) * g)
            }
            None => {
                let raw = self.pair_row(x)?;
                let mass = trapezoid_sum(&raw, self.grid.spacing());
                if mass <= 0.0 {
                    return Err(ModelError::Degenerate { x });
                }
                Ok(self.model.density_at(x, y)? / mass)
            }
        }
    }

    /// Conditional CDF `F_y1(y | x)`.
    pub fn cdf_y1(&self, y: f64, x: f64) -> Result<f64, ModelError> {
        self.check_inside(x)?;
        self.check_inside(y)?;
        match &self.ipv {
            Some(t) => {
                let n = self.model.n_bidders() as i32;
                Ok(t.cdf.eval_clamped(y).powi(n - 1))
            }
            None => {
                let raw = self.pair_row(x)?;
                let h = self.grid.spacing();
                let mass = trapezoid_sum(&raw, h);
                if mass <= 0.0 {
                    return Err(ModelError::Degenerate { x });
                }
                let (k, frac) = self.grid.locate(y);
                let full = if k == 0 {
                    0.0
                } else {
                    trapezoid_sum(&raw[..=k], h)
                };
                let partial = if frac > 0.0 {
                    let dy = y - self.grid.nodes()[k];
                    0.5 * dy * (raw[k] + self.model.density_at(x, y)?)
                } else {
                    0.0
                };
                Ok(((full + partial) / mass).min(1.0))
            }
        }
    }

    pub fn value(&self, x: f64, y: f64) -> Result<f64, ModelError> {
        self.model.value(x, y)
    }

    fn pair_row(&self, x: f64) -> Result<Vec<f64>, ModelError> {
        self.grid
            .nodes()
            .iter()
            .map(|&y| {
                let d = self.model.density_at(x, y)?;
                if d < 0.0 {
                    Err(ModelError::NegativeDensity { x, y, value: d })
                } else {
                    Ok(d)
                }
            })
            .collect()
    }

    fn check_inside(&self, x: f64) -> Result<(), ModelError> {
        if self.grid.contains(x) {
            Ok(())
        } else {
            Err(ModelError::OutsideSupport {
                x,
                lo: self.grid.lo(),
                hi: self.grid.hi(),
            })
        }
    }
}

/// Build the conditional law of `Y1` given `X1` for a model on a grid.
pub fn conditionals_from_model(m: &SignalModel, g: &Grid) -> Result<Conditionals, ModelError> {
    Conditionals::new(m, g)
}

fn warn_if_unnormalised(total: f64) {
    if (total - 1.0).abs() > NORMALIZATION_TOLERANCE {
        warn!("density integrates to {total:.6} over its support; rescaling to 1");
    }
}

fn check_symmetry(model: &SignalModel, grid: &Grid) -> Result<(), ModelError> {
    let coarse = grid.coarsened(257);
    for &x in coarse.nodes() {
        for &y in coarse.nodes() {
            let a = model.density_at(x, y)?;
            let b = model.density_at(y, x)?;
            if (a - b).abs() > 1e-12 {
                return Err(ModelError::Asymmetric { x, y });
            }
        }
    }
    Ok(())
}
