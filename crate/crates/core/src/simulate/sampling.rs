use rand::Rng;

use super::SimulationError;
use crate::model::{Conditionals, Family, SignalModel};
use crate::numerics::running_trapezoid;

/// Envelope inflation over the largest density value seen on the grid.
pub const ENVELOPE_FACTOR: f64 = 1.05;
/// Rejection sampling gives up below this acceptance rate.
pub const MIN_ACCEPTANCE: f64 = 1e-3;
/// Proposals made before the acceptance rate is judged.
pub const MIN_PROPOSALS: u64 = 10_000;
const ENVELOPE_POINTS: usize = 513;

/// Draws joint signal profiles from a model.
#[derive(Debug, Clone)]
pub struct SignalSampler {
    n_bidders: usize,
    kind: SamplerKind,
    proposals: u64,
    accepted: u64,
    envelope_violations: u64,
}

#[derive(Debug, Clone)]
enum SamplerKind {
    // inverse CDF on the grid
    Ipv {
        nodes: Vec<f64>,
        cdf: Vec<f64>,
    },
    // rejection from the uniform box
    Pair {
        model: SignalModel,
        lo: f64,
        hi: f64,
        envelope: f64,
    },
}

impl SignalSampler {
    pub fn new(c: &Conditionals) -> Result<Self, SimulationError> {
        let model = c.model();
        let grid = c.grid();
        let kind = match model.family() {
            Family::Ipv => {
                let mut cdf = running_trapezoid(c.marginal_pdf(), grid.spacing());
                let top = *cdf.last().unwrap();
                cdf.iter_mut().for_each(|v| *v /= top);
                *cdf.last_mut().unwrap() = 1.0;
                SamplerKind::Ipv {
                    nodes: grid.nodes().to_vec(),
                    cdf,
                }
            }
            Family::Pair => {
                let coarse = grid.coarsened(ENVELOPE_POINTS);
                let mut peak: f64 = 0.0;
                for &x in coarse.nodes() {
                    for &y in coarse.nodes() {
                        peak = peak.max(model.density_at(x, y)?);
                    }
                }
                if peak <= 0.0 {
                    return Err(SimulationError::Sampling(
                        "density vanishes on the grid".into(),
                    ));
                }
                SamplerKind::Pair {
                    model: model.clone(),
                    lo: grid.lo(),
                    hi: grid.hi(),
                    envelope: ENVELOPE_FACTOR * peak,
                }
            }
        };
        Ok(SignalSampler {
            n_bidders: model.n_bidders(),
            kind,
            proposals: 0,
            accepted: 0,
            envelope_violations: 0,
        })
    }

    pub fn n_bidders(&self) -> usize {
        self.n_bidders
    }

    /// Fill `out` with one signal per bidder.
    pub fn draw<R: Rng>(&mut self, rng: &mut R, out: &mut [f64]) -> Result<(), SimulationError> {
        debug_assert_eq!(out.len(), self.n_bidders);
        match &self.kind {
            SamplerKind::Ipv { nodes, cdf } => {
                for slot in out.iter_mut() {
                    *slot = invert_cdf(nodes, cdf, rng.random::<f64>());
                }
                Ok(())
            }
            SamplerKind::Pair {
                model,
                lo,
                hi,
                envelope,
            } => loop {
                let x = lo + (hi - lo) * rng.random::<f64>();
                let y = lo + (hi - lo) * rng.random::<f64>();
                let u = envelope * rng.random::<f64>();
                let d = model.density_at(x, y)?;
                self.proposals += 1;
                if d > *envelope {
                    self.envelope_violations += 1;
                }
                if u < d {
                    self.accepted += 1;
                    out[0] = x;
                    out[1] = y;
                    return Ok(());
                }
                if self.proposals >= MIN_PROPOSALS {
                    let rate = self.acceptance_rate();
                    if rate < MIN_ACCEPTANCE {
                        return Err(SimulationError::LowAcceptance { rate });
                    }
                }
            },
        }
    }

    /// Accepted over proposed draws; 1 for inverse-CDF sampling.
    pub fn acceptance_rate(&self) -> f64 {
        if self.proposals == 0 {
            1.0
        } else {
            self.accepted as f64 / self.proposals as f64
        }
    }

    /// Proposals at which the density exceeded the envelope.
    pub fn envelope_violations(&self) -> u64 {
        self.envelope_violations
    }

    pub fn proposals(&self) -> u64 {
        self.proposals
    }
}

fn invert_cdf(nodes: &[f64], cdf: &[f64], u: f64) -> f64 {
    let j = cdf.partition_point(|&v| v < u);
    if j == 0 {
        return nodes[0];
    }
    if j >= cdf.len() {
        return *nodes.last().unwrap();
    }
    let (a, b) = (cdf[j - 1], cdf[j]);
    let t = if b > a { (u - a) / (b - a) } else { 0.0 };
    nodes[j - 1] + t * (nodes[j] - nodes[j - 1])
}

/// Draw `trials` signal profiles with a ChaCha generator seeded from `seed`.
pub fn sample_signals(
    c: &Conditionals,
    seed: u64,
    trials: usize,
) -> Result<Vec<Vec<f64>>, SimulationError> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut sampler = SignalSampler::new(c)?;
    let mut out = Vec::with_capacity(trials);
    for _ in 0..trials {
        let mut profile = vec![0.0; sampler.n_bidders()];
        sampler.draw(&mut rng, &mut profile)?;
        out.push(profile);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Expr, ValueFn};
    use crate::numerics::make_grid;

    fn mean(xs: impl Iterator<Item = f64>) -> f64 {
        let v: Vec<f64> = xs.collect();
        v.iter().sum::<f64>() / v.len() as f64
    }

    #[test]
    fn uniform_signals_have_uniform_moments() {
        let g = make_grid(0.0, 1.0, 1025).unwrap();
        let c = Conditionals::new(&SignalModel::uniform_ipv(3).unwrap(), &g).unwrap();
        let s = sample_signals(&c, 7, 40_000).unwrap();
        assert!(s.iter().all(|p| p.len() == 3));
        let m = mean(s.iter().flat_map(|p| p.iter().copied()));
        let m2 = mean(s.iter().flat_map(|p| p.iter().map(|x| x * x)));
        assert!((m - 0.5).abs() < 0.005);
        assert!((m2 - 1.0 / 3.0).abs() < 0.005);
    }

    #[test]
    fn ipv_inverse_cdf_follows_density() {
        // g(x) = 2x has mean 2/3
        let g = make_grid(0.0, 1.0, 1025).unwrap();
        let d: Expr = crate::model::parse_density("2*x").unwrap();
        let m = SignalModel::new(Family::Ipv, 2, (0.0, 1.0), d, ValueFn::Private).unwrap();
        let c = Conditionals::new(&m, &g).unwrap();
        let s = sample_signals(&c, 3, 40_000).unwrap();
        let m = mean(s.iter().flat_map(|p| p.iter().copied()));
        assert!((m - 2.0 / 3.0).abs() < 0.005, "{m}");
    }

    #[test]
    fn pair_moments_match_density() {
        let g = make_grid(0.0, 1.0, 513).unwrap();
        let c = Conditionals::new(&SignalModel::affiliated_pair(), &g).unwrap();
        let s = sample_signals(&c, 42, 100_000).unwrap();
        let mx = mean(s.iter().map(|p| p[0]));
        let mxy = mean(s.iter().map(|p| p[0] * p[1]));
        // E[x] = 8/15, E[xy] = 13/45
        assert!((mx - 8.0 / 15.0).abs() < 0.004, "{mx}");
        assert!((mxy - 13.0 / 45.0).abs() < 0.004, "{mxy}");
    }

    #[test]
    fn same_seed_same_draws() {
        let g = make_grid(0.0, 1.0, 257).unwrap();
        let c = Conditionals::new(&SignalModel::affiliated_pair(), &g).unwrap();
        assert_eq!(
            sample_signals(&c, 9, 500).unwrap(),
            sample_signals(&c, 9, 500).unwrap()
        );
        assert_ne!(
            sample_signals(&c, 9, 50).unwrap(),
            sample_signals(&c, 10, 50).unwrap()
        );
    }

    #[test]
    fn spiky_density_aborts() {
        // nearly all mass in a sliver at the corner
        let g = make_grid(0.0, 1.0, 257).unwrap();
        let d = crate::model::parse_density("1e-6 + (x*y)^400").unwrap();
        let m = SignalModel::new(Family::Pair, 2, (0.0, 1.0), d, ValueFn::Private).unwrap();
        let c = Conditionals::new(&m, &g).unwrap();
        assert!(matches!(
            sample_signals(&c, 1, 100),
            Err(SimulationError::LowAcceptance { .. })
        ));
    }

    #[test]
    fn inverse_cdf_edges() {
        let nodes = [0.0, 0.5, 1.0];
        let cdf = [0.0, 0.5, 1.0];
        assert_eq!(invert_cdf(&nodes, &cdf, 0.0), 0.0);
        assert!((invert_cdf(&nodes, &cdf, 0.25) - 0.25).abs() < 1e-15);
        assert_eq!(invert_cdf(&nodes, &cdf, 1.0), 1.0);
    }
}
