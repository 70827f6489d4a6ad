//! Exact rational coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Result, ShlError};

/// Coefficient field for every form space: arbitrary-precision rationals,
/// always in lowest terms with a positive denominator.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar { Scalar::from_integer(BigInt::from(n)) }

pub fn ratio(p: i64, q: i64) -> Scalar { Scalar::new(BigInt::from(p), BigInt::from(q)) }

pub fn zero() -> Scalar { Scalar::zero() }

pub fn one() -> Scalar { Scalar::one() }

/// Parses `"p/q"`, `"p"`, with optional sign and surrounding whitespace.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => (t, None),
    };
    let parse_int = |x: &str| -> Result<BigInt> {
        x.parse::<BigInt>().map_err(|_| ShlError::Parse(format!("invalid rational '{s}'")))
    };
    let p = parse_int(num)?;
    let q = match den {
        Some(d) => parse_int(d)?,
        None => BigInt::one(),
    };
    if q.is_zero() {
        return Err(ShlError::Parse(format!("zero denominator in '{s}'")));
    }
    Ok(Scalar::new(p, q))
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn format_scalar(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// `n!` as a scalar.
pub fn factorial(n: usize) -> Scalar {
    (1..=n).fold(one(), |acc, i| acc * int(i as i64))
}

/// Exact square root when `x` is the square of a rational.
pub fn rational_sqrt(x: &Scalar) -> Option<Scalar> {
    if x.is_negative() {
        return None;
    }
    let p = x.numer().sqrt();
    let q = x.denom().sqrt();
    if &(&p * &p) == x.numer() && &(&q * &q) == x.denom() {
        Some(Scalar::new(p, q))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_scalar(" -6/4 ").unwrap(), ratio(-3, 2));
        assert_eq!(format_scalar(&ratio(-3, 2)), "-3/2");
        assert_eq!(format_scalar(&ratio(4, 2)), "2");
        assert_eq!(parse_scalar("3/-6").unwrap(), ratio(-1, 2));
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
    }

    #[test]
    fn square_roots() {
        assert_eq!(rational_sqrt(&ratio(9, 4)), Some(ratio(3, 2)));
        assert_eq!(rational_sqrt(&int(2)), None);
        assert_eq!(rational_sqrt(&int(-1)), None);
        assert_eq!(factorial(4), int(24));
    }
}
