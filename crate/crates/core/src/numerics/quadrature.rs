use super::{Grid, NumericsError, TabulatedFunction};

/// Running trapezoid integral of `f_values` from `grid.lo()` to every node.
pub fn cumulative_integral(
    f_values: &[f64],
    grid: &Grid,
) -> Result<TabulatedFunction, NumericsError> {
    if f_values.len() != grid.len() {
        return Err(NumericsError::LengthMismatch {
            expected: grid.len(),
            found: f_values.len(),
        });
    }
    TabulatedFunction::new(grid.clone(), running_trapezoid(f_values, grid.spacing()))
}

pub(crate) fn running_trapezoid(f_values: &[f64], h: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(f_values.len());
    let mut acc = 0.0;
    out.push(acc);
    for w in f_values.windows(2) {
        acc += 0.5 * h * (w[0] + w[1]);
        out.push(acc);
    }
    out
}

/// Composite trapezoid over the whole grid.
pub fn trapezoid(f_values: &[f64], grid: &Grid) -> Result<f64, NumericsError> {
    if f_values.len() != grid.len() {
        return Err(NumericsError::LengthMismatch {
            expected: grid.len(),
            found: f_values.len(),
        });
    }
    Ok(trapezoid_sum(f_values, grid.spacing()))
}

pub(crate) fn trapezoid_sum(f_values: &[f64], h: f64) -> f64 {
    let n = f_values.len();
    let inner: f64 = f_values[1..n - 1].iter().sum();
    h * (inner + 0.5 * (f_values[0] + f_values[n - 1]))
}

/// Composite Simpson over the whole grid (the odd node count is guaranteed by [`Grid`]).
pub fn simpson(f_values: &[f64], grid: &Grid) -> Result<f64, NumericsError> {
    if f_values.len() != grid.len() {
        return Err(NumericsError::LengthMismatch {
            expected: grid.len(),
            found: f_values.len(),
        });
    }
    let n = f_values.len();
    let mut acc = f_values[0] + f_values[n - 1];
    for (i, v) in f_values.iter().enumerate().take(n - 1).skip(1) {
        acc += if i % 2 == 1 { 4.0 * v } else { 2.0 * v };
    }
    Ok(acc * grid.spacing() / 3.0)
}
