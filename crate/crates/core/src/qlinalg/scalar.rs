//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational; always reduced with a positive denominator.
pub type Scalar = BigRational;

pub fn q(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn qr(num: i64, den: i64) -> Scalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// `(-1)^e` as a scalar.
pub fn sign(e: i64) -> Scalar {
    if e.rem_euclid(2) == 0 {
        one()
    } else {
        -one()
    }
}

pub fn factorial(n: usize) -> Scalar {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    BigRational::from_integer(acc)
}

/// Parses `"3"`, `"-1/6"`, `" 2 / 4 "`.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let t = s.trim();
    let bad = || Error::input(format!("not a rational number: {s:?}"));
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

/// `"1"`, `"-1/2"`; the inverse of [`parse_scalar`].
pub fn format_scalar(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Re-reduces a rational from its raw parts; used to spot-check that values
/// are stored in canonical form.
pub fn is_canonical(x: &Scalar) -> bool {
    let again = BigRational::new(x.numer().clone(), x.denom().clone());
    x.denom().is_positive() && again.numer() == x.numer() && again.denom() == x.denom()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_scalar("-2/4").unwrap(), qr(-1, 2));
        assert_eq!(parse_scalar(" 7 ").unwrap(), q(7));
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
        assert_eq!(format_scalar(&qr(3, -6)), "-1/2");
        assert_eq!(format_scalar(&q(5)), "5");
    }

    #[test]
    fn canonical_after_arithmetic() {
        let x = qr(1, 6) + qr(1, 3) - qr(2, 4);
        assert!(x.is_zero());
        assert!(is_canonical(&(qr(5, 10) * q(4))));
        assert_eq!(factorial(4), q(24));
        assert_eq!(sign(3), q(-1));
        assert_eq!(sign(-2), q(1));
    }
}
