use std::fmt;
use std::str::FromStr;

use crate::equilibrium::ForfeitScheme;

/// A scheme as named on the command line. The asymptotic exponential
/// strategy is a separate solver for the exponential forfeit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SchemeSpec {
    Scheme(ForfeitScheme),
    ExponentialAsymptotic,
}

impl SchemeSpec {
    /// The payment rule bidders face.
    pub fn forfeit(self) -> ForfeitScheme {
        match self {
            SchemeSpec::Scheme(s) => s,
            SchemeSpec::ExponentialAsymptotic => ForfeitScheme::Exponential,
        }
    }

    /// Classic, first-price and fractional schemes.
    pub fn is_fractional_family(self) -> bool {
        matches!(
            self,
            SchemeSpec::Scheme(
                ForfeitScheme::Classic
                    | ForfeitScheme::FirstPrice
                    | ForfeitScheme::Fractional { .. }
            )
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemeSpecError(pub String);

impl fmt::Display for SchemeSpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for SchemeSpecError {}

const GRAMMAR: &str = "classic | first-price | fee-kept:<c> | fee-returned:<c> | fractional:<beta> | exponential | exponential-asymptotic";

impl FromStr for SchemeSpec {
    type Err = SchemeSpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (s, None),
        };
        let param = |what: &str| -> Result<f64, SchemeSpecError> {
            let raw = arg.ok_or_else(|| {
                SchemeSpecError(format!("{name} needs a {what}: {name}:<{what}>"))
            })?;
            raw.trim()
                .parse::<f64>()
                .map_err(|_| SchemeSpecError(format!("malformed {what} `{raw}` in scheme `{s}`")))
        };
        let no_param = |spec: SchemeSpec| -> Result<SchemeSpec, SchemeSpecError> {
            match arg {
                Some(_) => Err(SchemeSpecError(format!("{name} takes no parameter"))),
                None => Ok(spec),
            }
        };
        let spec = match name {
            "classic" => no_param(SchemeSpec::Scheme(ForfeitScheme::Classic))?,
            "first-price" => no_param(SchemeSpec::Scheme(ForfeitScheme::FirstPrice))?,
            "exponential" => no_param(SchemeSpec::Scheme(ForfeitScheme::Exponential))?,
            "exponential-asymptotic" => no_param(SchemeSpec::ExponentialAsymptotic)?,
            "fee-kept" => SchemeSpec::Scheme(ForfeitScheme::FeeKept { fee: param("fee")? }),
            "fee-returned" => SchemeSpec::Scheme(ForfeitScheme::FeeReturned { fee: param("fee")? }),
            "fractional" => SchemeSpec::Scheme(ForfeitScheme::Fractional {
                beta: param("beta")?,
            }),
            _ => {
                return Err(SchemeSpecError(format!(
                    "unknown scheme `{s}` (expected {GRAMMAR})"
                )))
            }
        };
        spec.forfeit()
            .validate()
            .map_err(|e| SchemeSpecError(e.to_string()))?;
        Ok(spec)
    }
}

impl fmt::Display for SchemeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchemeSpec::Scheme(s) => s.fmt(f),
            SchemeSpec::ExponentialAsymptotic => f.write_str("exponential-asymptotic"),
        }
    }
}

/// Split a comma-separated list of scheme specs.
pub fn parse_scheme_list(list: &str) -> Result<Vec<SchemeSpec>, SchemeSpecError> {
    list.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(str::parse)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_forms_round_trip() {
        for s in [
            "classic",
            "first-price",
            "fee-kept:2",
            "fee-kept:0.25",
            "fee-returned:0.1",
            "fractional:0.5",
            "fractional:0",
            "fractional:1",
            "exponential",
            "exponential-asymptotic",
        ] {
            assert_eq!(s.parse::<SchemeSpec>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn beta_out_of_range() {
        let err = "fractional:1.5".parse::<SchemeSpec>().unwrap_err();
        assert!(err.0.contains("beta out of range"), "{err}");
    }

    #[test]
    fn malformed_specs() {
        for s in [
            "",
            "fractional",
            "fractional:x",
            "fee-kept:-1",
            "classic:1",
            "vickrey",
        ] {
            assert!(s.parse::<SchemeSpec>().is_err(), "{s}");
        }
    }

    #[test]
    fn lists() {
        let v = parse_scheme_list("classic, fractional:0.5").unwrap();
        assert_eq!(v.len(), 2);
        assert!(v.iter().all(|s| s.is_fractional_family()));
        assert!(!SchemeSpec::ExponentialAsymptotic.is_fractional_family());
    }

    proptest! {
        #[test]
        fn parameterised_round_trip(p in 0.0f64..=1.0, kind in 0usize..3) {
            let name = ["fee-kept", "fee-returned", "fractional"][kind];
            let spec: SchemeSpec = format!("{name}:{p}").parse().unwrap();
            let printed = spec.to_string();
            prop_assert_eq!(&printed, &format!("{name}:{p}"));
            prop_assert_eq!(printed.parse::<SchemeSpec>().unwrap(), spec);
        }
    }
}
