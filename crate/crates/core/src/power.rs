//! Power index kinds and exact per-player index profiles.

use std::fmt;
use std::str::FromStr;

use num::bigint::{BigInt, BigUint};
use num::{BigRational, One, ToPrimitive, Zero};

use crate::error::Error;

pub type Rational = BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IndexKind {
    /// Shapley-Shubik.
    Ss,
    /// Banzhaf.
    Bz,
    /// Holler-Packel (public good), unnormalized.
    Hp,
    /// Deegan-Packel.
    Dp,
}

impl IndexKind {
    pub const ALL: [IndexKind; 4] = [IndexKind::Ss, IndexKind::Bz, IndexKind::Hp, IndexKind::Dp];

    pub fn as_str(self) -> &'static str {
        match self {
            IndexKind::Ss => "ss",
            IndexKind::Bz => "bz",
            IndexKind::Hp => "hp",
            IndexKind::Dp => "dp",
        }
    }
}

impl fmt::Display for IndexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IndexKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ss" => Ok(IndexKind::Ss),
            "bz" => Ok(IndexKind::Bz),
            "hp" => Ok(IndexKind::Hp),
            "dp" => Ok(IndexKind::Dp),
            other => Err(Error::Parse(format!("unknown index kind `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerProfile {
    pub kind: IndexKind,
    pub values: Vec<Rational>,
}

impl PowerProfile {
    pub fn new(kind: IndexKind, values: Vec<Rational>) -> Self {
        Self { kind, values }
    }

    pub fn value(&self, j: usize) -> &Rational {
        &self.values[j]
    }

    pub fn total(&self) -> Rational {
        self.values.iter().fold(Rational::zero(), |acc, v| acc + v)
    }

    /// Sum of the values over a set of players.
    pub fn theta<I: IntoIterator<Item = usize>>(&self, members: I) -> Rational {
        members
            .into_iter()
            .fold(Rational::zero(), |acc, j| acc + &self.values[j])
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// `num/den` in lowest terms; integers print without a denominator.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let bad = || Error::Parse(format!("not a fraction: `{s}`"));
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

pub fn ratio(num: u64, den: u64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: u64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Lossy conversion for display only.
pub fn approx(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub(crate) fn factorials(n: usize) -> Vec<BigUint> {
    let mut f = Vec::with_capacity(n + 1);
    f.push(BigUint::one());
    for i in 1..=n {
        let next = &f[i - 1] * BigUint::from(i);
        f.push(next);
    }
    f
}

/// Shapley-Shubik index from a histogram of swing coalitions by size:
/// `Σ_s count[s] (s-1)! (n-s)! / n!`.
pub(crate) fn shapley_from_histogram(hist: &[BigUint], n: usize, fact: &[BigUint]) -> Rational {
    let mut acc = BigUint::zero();
    for (s, c) in hist.iter().enumerate() {
        if s == 0 || c.is_zero() {
            continue;
        }
        acc += c * &fact[s - 1] * &fact[n - s];
    }
    Rational::new(BigInt::from(acc), BigInt::from(fact[n].clone()))
}

/// Banzhaf index from a swing count: `count / 2^(n-1)`.
pub(crate) fn banzhaf_from_count(count: &BigUint, n: usize) -> Rational {
    Rational::new(
        BigInt::from(count.clone()),
        BigInt::one() << (n.saturating_sub(1)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fraction_round_trip() {
        for s in ["1/2", "7/10", "3", "0", "1/12"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(format_rational(&parse_rational("2/4").unwrap()), "1/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("DP".parse::<IndexKind>().unwrap(), IndexKind::Dp);
        assert!("xx".parse::<IndexKind>().is_err());
    }

    #[test]
    fn shapley_weights_sum_to_one_for_dictator() {
        // One player, swing in the singleton only.
        let fact = factorials(1);
        let hist = vec![BigUint::zero(), BigUint::one()];
        assert_eq!(shapley_from_histogram(&hist, 1, &fact), int(1));
    }
}
