use super::{NumericsError, TabulatedFunction};

/// Shape-preserving cubic Hermite interpolant (Fritsch-Carlson slopes) of an
/// increasing table. Its slope is second-order accurate, so quantities that
/// depend on the derivative of the inverse stay smooth across cells.
#[derive(Debug, Clone)]
pub struct MonotoneCubic {
    nodes: Vec<f64>,
    values: Vec<f64>,
    slopes: Vec<f64>,
}

impl MonotoneCubic {
    pub fn new(table: &TabulatedFunction) -> Result<Self, NumericsError> {
        if !table.is_strictly_increasing() {
            return Err(NumericsError::NotMonotone);
        }
        let nodes = table.grid().nodes().to_vec();
        let y = table.values().to_vec();
        let h = table.grid().spacing();
        let n = y.len();
        let mut d = vec![0.0; n];
        if n == 2 {
            d.fill((y[1] - y[0]) / h);
        } else {
            d[0] = (-3.0 * y[0] + 4.0 * y[1] - y[2]) / (2.0 * h);
            d[n - 1] = (3.0 * y[n - 1] - 4.0 * y[n - 2] + y[n - 3]) / (2.0 * h);
            for i in 1..n - 1 {
                d[i] = (y[i + 1] - y[i - 1]) / (2.0 * h);
            }
        }
        for s in d.iter_mut() {
            *s = s.max(0.0);
        }
        for k in 0..n - 1 {
            let secant = (y[k + 1] - y[k]) / h;
            let a = d[k] / secant;
            let b = d[k + 1] / secant;
            let r = a * a + b * b;
            if r > 9.0 {
                let tau = 3.0 / r.sqrt();
                d[k] = tau * a * secant;
                d[k + 1] = tau * b * secant;
            }
        }
        Ok(MonotoneCubic {
            nodes,
            values: y,
            slopes: d,
        })
    }

    fn cell_eval(&self, k: usize, t: f64) -> (f64, f64) {
        let h = self.nodes[k + 1] - self.nodes[k];
        let (y0, y1) = (self.values[k], self.values[k + 1]);
        let (m0, m1) = (self.slopes[k] * h, self.slopes[k + 1] * h);
        let t2 = t * t;
        let t3 = t2 * t;
        let value = (2.0 * t3 - 3.0 * t2 + 1.0) * y0
            + (t3 - 2.0 * t2 + t) * m0
            + (-2.0 * t3 + 3.0 * t2) * y1
            + (t3 - t2) * m1;
        let dvalue = (6.0 * t2 - 6.0 * t) * y0
            + (3.0 * t2 - 4.0 * t + 1.0) * m0
            + (-6.0 * t2 + 6.0 * t) * y1
            + (3.0 * t2 - 2.0 * t) * m1;
        (value, dvalue)
    }

    /// Interpolated value at `x`, clamped into the tabulated range.
    pub fn eval(&self, x: f64) -> f64 {
        let lo = self.nodes[0];
        let h = self.nodes[1] - lo;
        let last = self.nodes.len() - 2;
        let pos = ((x - lo) / h).clamp(0.0, (last + 1) as f64);
        let k = (pos.floor() as usize).min(last);
        self.cell_eval(k, pos - k as f64).0
    }

    /// Abscissa at which the interpolant equals `y`.
    pub fn inverse(&self, y: f64) -> Result<f64, NumericsError> {
        let first = self.values[0];
        let last = *self.values.last().unwrap();
        if !(y >= first && y <= last) {
            return Err(NumericsError::OutOfRange {
                x: y,
                lo: first,
                hi: last,
            });
        }
        let j = self.values.partition_point(|&v| v < y);
        if j == 0 {
            return Ok(self.nodes[0]);
        }
        let k = j - 1;
        // safeguarded Newton on the cell parameter
        let (mut a, mut b) = (0.0, 1.0);
        let (y0, y1) = (self.values[k], self.values[k + 1]);
        let mut t = (y - y0) / (y1 - y0);
        for _ in 0..60 {
            let (v, dv) = self.cell_eval(k, t);
            let r = v - y;
            if r > 0.0 {
                b = t;
            } else {
                a = t;
            }
            let mut next = if dv > 0.0 { t - r / dv } else { f64::NAN };
            if !(next > a && next < b) {
                next = 0.5 * (a + b);
            }
            if (next - t).abs() <= 1e-15 {
                t = next;
                break;
            }
            t = next;
        }
        let h = self.nodes[k + 1] - self.nodes[k];
        Ok(self.nodes[k] + t * h)
    }
}
