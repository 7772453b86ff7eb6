//! Parsers for command-line values. They take plain strings so they can be
//! fuzzed without going through clap.

use std::fmt;

use markoff_core::ff::{Fp, PrimeField, MAX_MODULUS};
use markoff_core::surface::Triple;
use markoff_core::Error;

/// A usage error: reported on stderr with exit code 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

impl From<Error> for UsageError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidModulus(_) => UsageError("p must be prime > 5".into()),
            other => UsageError(other.to_string()),
        }
    }
}

/// A level as written on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LevelArg {
    Int(i64),
    /// `(1 + √5)/2`
    Phi,
    /// `(1 − √5)/2`
    PhiBar,
}

pub fn parse_level(s: &str) -> Result<LevelArg, UsageError> {
    match s.trim() {
        "phi" => Ok(LevelArg::Phi),
        "phibar" => Ok(LevelArg::PhiBar),
        t => t.parse::<i64>().map(LevelArg::Int).map_err(|_| {
            UsageError(format!(
                "invalid level {s:?}: expected an integer, phi or phibar"
            ))
        }),
    }
}

impl LevelArg {
    pub fn resolve(self, field: &PrimeField) -> Result<Fp, UsageError> {
        let golden = |sign: i64| {
            let r5 = field
                .sqrt(field.elem(5))
                .ok_or_else(|| UsageError(format!("5 is not a square mod {}", field.p())))?;
            Ok((field.one() + field.elem(sign) * r5) * field.half())
        };
        match self {
            LevelArg::Int(k) => Ok(field.elem(k)),
            LevelArg::Phi => golden(1),
            LevelArg::PhiBar => golden(-1),
        }
    }
}

pub fn parse_prime(s: &str) -> Result<u64, UsageError> {
    let p: u64 = s
        .trim()
        .parse()
        .map_err(|_| UsageError("p must be prime > 5".into()))?;
    PrimeField::new(p)?;
    Ok(p)
}

/// Integer coordinates `x,y,z`; range is checked against `p` later.
pub fn parse_triple(s: &str) -> Result<[i64; 3], UsageError> {
    let bad = || UsageError(format!("invalid triple {s:?}: expected x,y,z"));
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    let mut out = [0i64; 3];
    for (slot, part) in out.iter_mut().zip(&parts) {
        *slot = part.parse().map_err(|_| bad())?;
    }
    Ok(out)
}

/// Coordinates must lie in `[0, p)`.
pub fn triple_in_field(field: &PrimeField, coords: [i64; 3]) -> Result<Triple, UsageError> {
    let p = field.p() as i64;
    if let Some(c) = coords.iter().find(|c| !(0..p).contains(*c)) {
        return Err(UsageError(format!("coordinate {c} is outside [0, {p})")));
    }
    Ok(Triple::from_ints(field, coords[0], coords[1], coords[2]))
}

/// Primes `p` with `pmin ≤ p ≤ pmax`, after checking the range.
pub fn prime_range(pmin: u64, pmax: u64) -> Result<Vec<u64>, UsageError> {
    if pmin <= 5 {
        return Err(UsageError("pmin must be > 5".into()));
    }
    if pmin > pmax {
        return Err(UsageError(format!("empty range {pmin}..={pmax}")));
    }
    if pmax > MAX_MODULUS {
        return Err(UsageError(format!("pmax exceeds {MAX_MODULUS}")));
    }
    Ok((pmin..=pmax)
        .filter(|&p| markoff_core::ff::is_prime(p))
        .collect())
}

/// Value of the `MARKOFF_MAX_P` override, if set.
pub fn parse_max_p(value: Option<&str>) -> Result<Option<u32>, UsageError> {
    value
        .map(|v| {
            v.trim().parse::<u32>().map_err(|_| {
                UsageError(format!(
                    "MARKOFF_MAX_P must be a positive integer, got {v:?}"
                ))
            })
        })
        .transpose()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn levels() {
        assert_eq!(parse_level("-2"), Ok(LevelArg::Int(-2)));
        assert_eq!(parse_level("phi"), Ok(LevelArg::Phi));
        assert_eq!(parse_level("phibar"), Ok(LevelArg::PhiBar));
        assert!(parse_level("tau").is_err());
        let f = PrimeField::new(11).unwrap();
        // √5 = 4 mod 11
        assert_eq!(LevelArg::Phi.resolve(&f).unwrap().value(), 8);
        assert_eq!(LevelArg::PhiBar.resolve(&f).unwrap().value(), 4);
        assert_eq!(LevelArg::Int(-2).resolve(&f).unwrap().value(), 9);
        let f = PrimeField::new(7).unwrap();
        assert!(LevelArg::Phi.resolve(&f).is_err());
    }

    #[test]
    fn primes() {
        assert_eq!(parse_prime("7"), Ok(7));
        for bad in ["4", "5", "9", "x", "-7", ""] {
            let e = parse_prime(bad).unwrap_err();
            assert_eq!(e.0, "p must be prime > 5", "{bad}");
        }
    }

    #[test]
    fn triples() {
        assert_eq!(parse_triple("2,2,2"), Ok([2, 2, 2]));
        assert_eq!(parse_triple(" 1, 1 ,0"), Ok([1, 1, 0]));
        assert!(parse_triple("1,2").is_err());
        assert!(parse_triple("1,2,3,4").is_err());
        assert!(parse_triple("a,b,c").is_err());
        let f = PrimeField::new(7).unwrap();
        assert!(triple_in_field(&f, [0, 0, 9]).is_err());
        assert!(triple_in_field(&f, [0, -1, 0]).is_err());
        assert!(triple_in_field(&f, [6, 0, 0]).is_ok());
    }

    #[test]
    fn ranges() {
        assert_eq!(
            prime_range(7, 31).unwrap(),
            vec![7, 11, 13, 17, 19, 23, 29, 31]
        );
        assert!(prime_range(2, 5).is_err());
        assert!(prime_range(11, 7).is_err());
    }

    #[test]
    fn max_p_override() {
        assert_eq!(parse_max_p(None), Ok(None));
        assert_eq!(parse_max_p(Some("500")), Ok(Some(500)));
        assert!(parse_max_p(Some("lots")).is_err());
    }
}
