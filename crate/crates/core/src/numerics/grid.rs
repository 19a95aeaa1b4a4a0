use super::NumericsError;

/// Default node count for signal grids.
pub const DEFAULT_GRID_NODES: usize = 2049;

/// Uniform grid over `[lo, hi]` with an odd node count of at least three.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    lo: f64,
    hi: f64,
    nodes: Vec<f64>,
}

impl Grid {
    pub fn new(lo: f64, hi: f64, n_nodes: usize) -> Result<Self, NumericsError> {
        if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
            return Err(NumericsError::InvalidInterval { lo, hi });
        }
        if n_nodes < 3 || n_nodes.is_multiple_of(2) {
            return Err(NumericsError::InvalidNodeCount(n_nodes));
        }
        let h = (hi - lo) / (n_nodes - 1) as f64;
        let mut nodes: Vec<f64> = (0..n_nodes).map(|i| lo + i as f64 * h).collect();
        // pin the last node exactly; lo + (n-1)*h can miss hi by an ulp
        nodes[n_nodes - 1] = hi;
        Ok(Grid { lo, hi, nodes })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Node spacing `h`.
    pub fn spacing(&self) -> f64 {
        (self.hi - self.lo) / (self.nodes.len() - 1) as f64
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo && x <= self.hi
    }

    /// Index of the cell `[nodes[k], nodes[k+1]]` containing `x`, and the
    /// fractional position of `x` inside it. `x` must lie within the grid.
    pub(crate) fn locate(&self, x: f64) -> (usize, f64) {
        let last_cell = self.nodes.len() - 2;
        let pos = (x - self.lo) / self.spacing();
        let k = (pos.floor().max(0.0) as usize).min(last_cell);
        let frac = ((x - self.nodes[k]) / self.spacing()).clamp(0.0, 1.0);
        (k, frac)
    }

    /// Same spacing count over `[lo, hi - delta]`.
    pub fn truncated_top(&self, delta: f64) -> Result<Grid, NumericsError> {
        Grid::new(self.lo, self.hi - delta, self.nodes.len())
    }

    /// Grid with every cell halved (`2n - 1` nodes), so the midpoints of
    /// this grid are nodes of the refined one.
    pub fn refined(&self) -> Grid {
        Grid::new(self.lo, self.hi, 2 * self.nodes.len() - 1)
            .expect("refining a valid grid yields a valid grid")
    }

    /// At most `max_points` nodes (odd count) spanning the same interval.
    pub fn coarsened(&self, max_points: usize) -> Grid {
        let mut n = self.nodes.len().min(max_points.max(3));
        if n.is_multiple_of(2) {
            n -= 1;
        }
        Grid::new(self.lo, self.hi, n).expect("coarsening a valid grid yields a valid grid")
    }
}

/// Build a uniform grid; see [`Grid::new`].
pub fn make_grid(lo: f64, hi: f64, n_nodes: usize) -> Result<Grid, NumericsError> {
    Grid::new(lo, hi, n_nodes)
}
