use super::{Grid, NumericsError, TabulatedFunction};

/// Classical fourth-order Runge-Kutta for the scalar problem
/// `alpha' = rhs(x, alpha)`, `alpha(x0) = alpha0`, stepping node to node.
pub fn rk4_solve<F>(
    rhs: F,
    x0: f64,
    alpha0: f64,
    grid: &Grid,
) -> Result<TabulatedFunction, NumericsError>
where
    F: Fn(f64, f64) -> Result<f64, NumericsError>,
{
    if x0 != grid.lo() {
        return Err(NumericsError::StartMismatch { x0, lo: grid.lo() });
    }
    let eval = |x: f64, a: f64| -> Result<f64, NumericsError> {
        let d = rhs(x, a)?;
        if d.is_finite() {
            Ok(d)
        } else {
            Err(NumericsError::NonFinite { x })
        }
    };

    let h = grid.spacing();
    let nodes = grid.nodes();
    let mut values = Vec::with_capacity(nodes.len());
    let mut a = alpha0;
    values.push(a);
    for &x in &nodes[..nodes.len() - 1] {
        let k1 = eval(x, a)?;
        let k2 = eval(x + 0.5 * h, a + 0.5 * h * k1)?;
        let k3 = eval(x + 0.5 * h, a + 0.5 * h * k2)?;
        let k4 = eval(x + h, a + h * k3)?;
        a += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if !a.is_finite() {
            return Err(NumericsError::NonFinite { x: x + h });
        }
        values.push(a);
    }
    TabulatedFunction::new(grid.clone(), values)
}
