//! Exact rationals. Backed by `num-rational`; this module only adds the
//! canonical `p/q` text form and a few dyadic helpers used across the crate.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Parses `p/q` or a bare integer `p`. Whitespace around the parts is ignored.
pub fn parse(text: &str) -> Result<Rational> {
    let err = || Error::ParseRational(text.to_string());
    let trimmed = text.trim();
    let (num, den) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (trimmed, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err())?;
    let den: BigInt = den.parse().map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

/// Canonical lowest-terms rendering: `p/q`, or `p` when `q = 1`.
pub fn format(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `2^-n`
pub fn pow2_neg(n: usize) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << n)
}

/// `2^n`
pub fn pow2(n: usize) -> Rational {
    Rational::from_integer(BigInt::one() << n)
}

/// `k / 2^g`
pub fn dyadic(k: i64, g: usize) -> Rational {
    Rational::new(BigInt::from(k), BigInt::one() << g)
}

pub fn abs_diff(a: &Rational, b: &Rational) -> Rational {
    (a - b).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_are_canonical() {
        assert_eq!(format(&parse("6/8").unwrap()), "3/4");
        assert_eq!(format(&parse(" -4/2 ").unwrap()), "-2");
        assert_eq!(format(&parse("3/-9").unwrap()), "-1/3");
        assert_eq!(parse("7").unwrap(), int(7));
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn dyadics() {
        assert_eq!(pow2_neg(3), frac(1, 8));
        assert_eq!(pow2(4), int(16));
        assert_eq!(dyadic(-3, 2), frac(-3, 4));
        assert_eq!(abs_diff(&int(1), &frac(5, 2)), frac(3, 2));
    }
}
