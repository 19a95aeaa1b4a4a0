use super::expr::{parse_density, Expr, Var};
use super::ModelError;

/// How bidder signals are distributed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Independent draws from a common marginal density `g(x)`.
    Ipv,
    /// Two bidders with a symmetric joint density `f(x, y)`.
    Pair,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Ipv => "ipv",
            Family::Pair => "pair",
        }
    }
}

/// Expected value of the object, `v(x, y)`, to a bidder with signal `x`
/// facing a highest rival signal `y`.
#[derive(Debug, Clone, PartialEq)]
pub enum ValueFn {
    /// `v(x, y) = x`
    Private,
    Expr(Expr),
}

impl ValueFn {
    pub fn eval(&self, x: f64, y: f64) -> Result<f64, ModelError> {
        match self {
            ValueFn::Private => Ok(x),
            ValueFn::Expr(e) => Ok(e.eval(x, y)?),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SignalModel {
    family: Family,
    n_bidders: usize,
    lo: f64,
    hi: f64,
    density: Expr,
    value: ValueFn,
}

impl SignalModel {
    pub fn new(
        family: Family,
        n_bidders: usize,
        support: (f64, f64),
        density: Expr,
        value: ValueFn,
    ) -> Result<Self, ModelError> {
        let (lo, hi) = support;
        if n_bidders < 2 {
            return Err(ModelError::Invalid(format!(
                "need at least 2 bidders, got {n_bidders}"
            )));
        }
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(ModelError::Invalid(format!(
                "support [{lo}, {hi}] must be a finite interval with lo < hi"
            )));
        }
        match family {
            Family::Pair if n_bidders != 2 => {
                return Err(ModelError::Invalid(format!(
                    "the pair family models exactly 2 bidders, got {n_bidders}"
                )))
            }
            Family::Ipv if density.uses(Var::Y) => {
                return Err(ModelError::Invalid(
                    "an ipv marginal density may only depend on x".into(),
                ))
            }
            _ => {}
        }
        Ok(SignalModel {
            family,
            n_bidders,
            lo,
            hi,
            density,
            value,
        })
    }

    /// Independent uniform signals on `[0, 1]` with private values.
    pub fn uniform_ipv(n_bidders: usize) -> Result<Self, ModelError> {
        Self::new(
            Family::Ipv,
            n_bidders,
            (0.0, 1.0),
            Expr::Num(1.0),
            ValueFn::Private,
        )
    }

    /// Two bidders on the unit square with joint density `4/5 (1 + x y)`
    /// and private values.
    pub fn affiliated_pair() -> Self {
        let density = parse_density("4/5*(1+x*y)").expect("literal parses");
        Self::new(Family::Pair, 2, (0.0, 1.0), density, ValueFn::Private)
            .expect("literal model is valid")
    }

    pub fn with_value(mut self, value: ValueFn) -> Self {
        self.value = value;
        self
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n_bidders(&self) -> usize {
        self.n_bidders
    }

    pub fn support(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    pub fn density(&self) -> &Expr {
        &self.density
    }

    pub fn value_fn(&self) -> &ValueFn {
        &self.value
    }

    /// Unnormalised density: marginal `g(x)` for ipv, joint `f(x, y)` for pair.
    pub fn density_at(&self, x: f64, y: f64) -> Result<f64, ModelError> {
        let d = match self.family {
            Family::Ipv => self.density.eval(x, 0.0)?,
            Family::Pair => self.density.eval(x, y)?,
        };
        if !d.is_finite() {
            return Err(ModelError::NonFiniteDensity { x, y });
        }
        Ok(d)
    }

    pub fn value(&self, x: f64, y: f64) -> Result<f64, ModelError> {
        self.value.eval(x, y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_requires_two_bidders() {
        let d = parse_density("1").unwrap();
        assert!(SignalModel::new(Family::Pair, 3, (0.0, 1.0), d, ValueFn::Private).is_err());
    }

    #[test]
    fn ipv_density_cannot_mention_y() {
        let d = parse_density("x+y").unwrap();
        assert!(SignalModel::new(Family::Ipv, 2, (0.0, 1.0), d, ValueFn::Private).is_err());
    }

    #[test]
    fn support_must_be_ordered() {
        let d = parse_density("1").unwrap();
        assert!(SignalModel::new(Family::Ipv, 2, (1.0, 0.0), d, ValueFn::Private).is_err());
    }

    #[test]
    fn private_value_is_own_signal() {
        let m = SignalModel::affiliated_pair();
        assert_eq!(m.value(0.3, 0.9).unwrap(), 0.3);
        assert!((m.density_at(1.0, 1.0).unwrap() - 1.6).abs() < 1e-15);
    }
}
