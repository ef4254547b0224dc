//! Textual parameter formats shared by the CLI and the config types.

use std::fmt;
use std::str::FromStr;

use ollga_core::algorithms::LambdaPolicy;
use ollga_core::MutationKind;

use crate::error::{HarnessError, Result};

fn parse_err(what: &'static str, input: &str) -> HarnessError {
    HarnessError::Parse { what, input: input.to_string() }
}

fn real(what: &'static str, s: &str) -> Result<f64> {
    s.trim().parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| parse_err(what, s))
}

/// Splits `a,b,c` and parses each item.
pub fn parse_list<T: FromStr>(s: &str) -> Result<Vec<T>> {
    s.split(',').map(|item| item.trim().parse::<T>().map_err(|_| parse_err("list item", item))).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Rls,
    Ea,
    Ollga,
}

impl FromStr for Algorithm {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rls" => Ok(Algorithm::Rls),
            "ea" => Ok(Algorithm::Ea),
            "ollga" => Ok(Algorithm::Ollga),
            _ => Err(parse_err("algorithm", s)),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Rls => "rls",
            Algorithm::Ea => "ea",
            Algorithm::Ollga => "ollga",
        })
    }
}

pub fn parse_family(s: &str) -> Result<MutationKind> {
    match s {
        "exchange" => Ok(MutationKind::Exchange),
        "reverse" => Ok(MutationKind::Reverse),
        "jump" => Ok(MutationKind::Jump),
        _ => Err(parse_err("mutation family", s)),
    }
}

/// A λ value that may depend on the problem size.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SizeValue {
    Fixed(f64),
    /// `n`
    Size,
    /// `2 ln(n + 1)`
    Log,
}

impl SizeValue {
    pub fn at(self, n: usize) -> f64 {
        match self {
            SizeValue::Fixed(v) => v,
            SizeValue::Size => n as f64,
            SizeValue::Log => 2.0 * ((n + 1) as f64).ln(),
        }
    }
}

impl FromStr for SizeValue {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "n" => Ok(SizeValue::Size),
            "log" => Ok(SizeValue::Log),
            other => real("lambda bound", other).map(SizeValue::Fixed),
        }
    }
}

impl fmt::Display for SizeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SizeValue::Fixed(v) => write!(f, "{v}"),
            SizeValue::Size => f.write_str("n"),
            SizeValue::Log => f.write_str("log"),
        }
    }
}

/// `static:<λ>`, `log`, `adjust:<F>,<λmin>,<λmax>` or `theory:<c1>,<c2>`.
///
/// The bounds of `adjust` also accept `n` and `log`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PolicySpec {
    Static(f64),
    Log,
    Adjust { factor: f64, min: SizeValue, max: SizeValue },
    Theory { c1: f64, c2: f64 },
}

impl PolicySpec {
    pub fn build(&self, n: usize) -> Result<LambdaPolicy> {
        let policy = match *self {
            PolicySpec::Static(lambda) => LambdaPolicy::fixed(lambda)?,
            PolicySpec::Log => LambdaPolicy::StaticLog,
            PolicySpec::Adjust { factor, min, max } => LambdaPolicy::self_adjusting(factor, min.at(n), max.at(n))?,
            PolicySpec::Theory { c1, c2 } => LambdaPolicy::theoretical(c1, c2)?,
        };
        Ok(policy)
    }
}

impl FromStr for PolicySpec {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        let (name, args) = s.split_once(':').unwrap_or((s, ""));
        let args: Vec<&str> = if args.is_empty() { vec![] } else { args.split(',').collect() };
        match (name, args.as_slice()) {
            ("log", []) => Ok(PolicySpec::Log),
            ("static", [lambda]) => Ok(PolicySpec::Static(real("lambda", lambda)?)),
            ("adjust", [factor, min, max]) => {
                Ok(PolicySpec::Adjust { factor: real("update factor", factor)?, min: min.parse()?, max: max.parse()? })
            }
            ("theory", [c1, c2]) => Ok(PolicySpec::Theory { c1: real("c1", c1)?, c2: real("c2", c2)? }),
            _ => Err(parse_err("lambda policy", s)),
        }
    }
}

impl fmt::Display for PolicySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolicySpec::Static(lambda) => write!(f, "static:{lambda}"),
            PolicySpec::Log => f.write_str("log"),
            PolicySpec::Adjust { factor, min, max } => write!(f, "adjust:{factor},{min},{max}"),
            PolicySpec::Theory { c1, c2 } => write!(f, "theory:{c1},{c2}"),
        }
    }
}

/// Parent fitness given relative to `n`: `12`, `0.4n` (rounded up), `n/2`
/// (rounded up), `sqrt` (`⌈√n⌉`), `n-3`, or `n-cbrt` (`n - ⌈n^(1/3)⌉`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FitnessToken {
    Absolute(usize),
    Fraction(f64),
    Sqrt,
    MinusConst(usize),
    MinusCbrt,
}

impl FitnessToken {
    pub fn resolve(self, n: usize) -> Option<usize> {
        let nf = n as f64;
        let f = match self {
            FitnessToken::Absolute(f) => f as f64,
            FitnessToken::Fraction(q) => (q * nf - 1e-9).ceil(),
            FitnessToken::Sqrt => (nf.sqrt() - 1e-9).ceil(),
            FitnessToken::MinusConst(k) => nf - k as f64,
            FitnessToken::MinusCbrt => nf - (nf.cbrt() - 1e-9).ceil(),
        };
        (f >= 0.0 && f <= nf).then_some(f as usize)
    }
}

impl FromStr for FitnessToken {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if let Ok(v) = t.parse::<usize>() {
            return Ok(FitnessToken::Absolute(v));
        }
        match t {
            "sqrt" => return Ok(FitnessToken::Sqrt),
            "n-cbrt" => return Ok(FitnessToken::MinusCbrt),
            "n" => return Ok(FitnessToken::Fraction(1.0)),
            _ => {}
        }
        if let Some(k) = t.strip_prefix("n-") {
            return k.parse().map(FitnessToken::MinusConst).map_err(|_| parse_err("fitness", s));
        }
        if let Some(k) = t.strip_prefix("n/") {
            let div = real("fitness", k)?;
            if div > 0.0 {
                return Ok(FitnessToken::Fraction(1.0 / div));
            }
        }
        if let Some(q) = t.strip_suffix('n') {
            return Ok(FitnessToken::Fraction(real("fitness", q)?));
        }
        Err(parse_err("fitness", s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn policies_round_trip() {
        for s in ["static:10", "log", "adjust:1.5,1,n", "adjust:1.5,1,log", "theory:0.4,0.6", "static:2.5"] {
            let p: PolicySpec = s.parse().unwrap();
            assert_eq!(p.to_string(), s);
        }
        for bad in ["static", "static:x", "adjust:1.5,1", "theory:0.4", "dynamic", "log:3"] {
            assert!(bad.parse::<PolicySpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn policies_build() {
        assert_eq!(PolicySpec::Static(10.0).build(5).unwrap().lambda(5, 0).unwrap(), 10.0);
        let p: PolicySpec = "adjust:1.5,1,n".parse().unwrap();
        match p.build(64).unwrap() {
            LambdaPolicy::SelfAdjusting { max, current, .. } => assert_eq!((max, current), (64.0, 1.0)),
            other => panic!("{other:?}"),
        }
        assert!("static:0.5".parse::<PolicySpec>().unwrap().build(5).is_err());
    }

    #[test]
    fn fitness_tokens() {
        let f = |s: &str, n| s.parse::<FitnessToken>().unwrap().resolve(n);
        assert_eq!(f("0", 20), Some(0));
        assert_eq!(f("sqrt", 20), Some(5));
        assert_eq!(f("sqrt", 100), Some(10));
        assert_eq!(f("0.4n", 50), Some(20));
        assert_eq!(f("0.4n", 20), Some(8));
        assert_eq!(f("n/2", 51), Some(26));
        assert_eq!(f("n-3", 20), Some(17));
        assert_eq!(f("n-cbrt", 100), Some(95));
        assert_eq!(f("n-cbrt", 20), Some(17));
        assert_eq!(f("n-cbrt", 27), Some(24));
        assert_eq!(f("n-30", 20), None);
        assert!("n-x".parse::<FitnessToken>().is_err());
    }

    #[test]
    fn lists() {
        assert_eq!(parse_list::<usize>("16, 32,64").unwrap(), vec![16, 32, 64]);
        assert!(parse_list::<usize>("16,,64").is_err());
        assert_eq!(parse_list::<Algorithm>("rls,ollga").unwrap(), vec![Algorithm::Rls, Algorithm::Ollga]);
    }
}
