use super::{Grid, NumericsError};

/// Values sampled on a [`Grid`], evaluated by piecewise-linear interpolation.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedFunction {
    grid: Grid,
    values: Vec<f64>,
    strictly_increasing: bool,
}

impl TabulatedFunction {
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<Self, NumericsError> {
        if values.len() != grid.len() {
            return Err(NumericsError::LengthMismatch {
                expected: grid.len(),
                found: values.len(),
            });
        }
        let strictly_increasing = values.windows(2).all(|w| w[1] > w[0]);
        Ok(TabulatedFunction {
            grid,
            values,
            strictly_increasing,
        })
    }

    /// Tabulate `f` at every node of `grid`.
    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> f64) -> Self {
        let values = grid.nodes().iter().map(|&x| f(x)).collect();
        Self::new(grid, values).expect("one value per node")
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.strictly_increasing
    }

    /// Interpolated value at `x`.
    pub fn eval(&self, x: f64) -> Result<f64, NumericsError> {
        if !self.grid.contains(x) {
            return Err(NumericsError::OutOfRange {
                x,
                lo: self.grid.lo(),
                hi: self.grid.hi(),
            });
        }
        Ok(self.eval_unchecked(x))
    }

    /// Interpolated value with `x` clamped into the grid.
    pub fn eval_clamped(&self, x: f64) -> f64 {
        self.eval_unchecked(x.clamp(self.grid.lo(), self.grid.hi()))
    }

    fn eval_unchecked(&self, x: f64) -> f64 {
        let (k, t) = self.grid.locate(x);
        let (a, b) = (self.values[k], self.values[k + 1]);
        a + t * (b - a)
    }

    /// Abscissa at which the table takes the value `y`.
    pub fn inverse(&self, y: f64) -> Result<f64, NumericsError> {
        if !self.strictly_increasing {
            return Err(NumericsError::NotMonotone);
        }
        let first = self.values[0];
        let last = *self.values.last().unwrap();
        if !(y >= first && y <= last) {
            return Err(NumericsError::OutOfRange {
                x: y,
                lo: first,
                hi: last,
            });
        }
        // first node with value >= y
        let j = self.values.partition_point(|&v| v < y);
        if j == 0 {
            return Ok(self.grid.lo());
        }
        let (a, b) = (self.values[j - 1], self.values[j]);
        let nodes = self.grid.nodes();
        let t = (y - a) / (b - a);
        Ok(nodes[j - 1] + t * (nodes[j] - nodes[j - 1]))
    }

    /// Pointwise map of the stored values over the same grid.
    pub fn map(&self, f: impl Fn(f64, f64) -> f64) -> TabulatedFunction {
        let values = self
            .grid
            .nodes()
            .iter()
            .zip(&self.values)
            .map(|(&x, &v)| f(x, v))
            .collect();
        TabulatedFunction::new(self.grid.clone(), values).expect("same grid")
    }

    /// Pointwise map of the stored values by node index.
    pub fn map_indexed(&self, f: impl Fn(usize, f64) -> f64) -> TabulatedFunction {
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(i, &v)| f(i, v))
            .collect();
        TabulatedFunction::new(self.grid.clone(), values).expect("same grid")
    }

    /// Largest absolute node-wise difference to another table on an equal grid.
    pub fn max_abs_diff(&self, other: &TabulatedFunction) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}
