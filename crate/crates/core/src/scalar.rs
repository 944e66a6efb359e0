//! The ground field: exact rationals.
//!
//! Every structure constant, coefficient and pairing value in the crate is a
//! [`Scalar`]. Swapping the field means swapping this alias and the handful of
//! constructors below.

use std::fmt;
use std::ops::{Mul, Neg};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn one() -> Scalar {
    Scalar::one()
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

/// `1/2`, which shows up in every transfer and morphism formula.
pub fn half() -> Scalar {
    ratio(1, 2)
}

/// Parses `"p/q"`, `"p"` or `"-p/q"` (surrounding whitespace ignored).
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let t = text.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| Error::Parse(format!("bad rational `{t}`")))?;
        let d = BigInt::from_str(d.trim()).map_err(|_| Error::Parse(format!("bad rational `{t}`")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in `{t}`")));
        }
        Ok(BigRational::new(n, d))
    } else {
        BigInt::from_str(t).map(BigRational::from_integer).map_err(|_| Error::Parse(format!("bad rational `{t}`")))
    }
}

/// `(-1)^n` for any integer exponent.
pub fn parity_sign(n: i64) -> Sign {
    if n.rem_euclid(2) == 0 {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

pub fn is_odd(n: i32) -> bool {
    n.rem_euclid(2) == 1
}

/// A sign `±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn to_scalar(self) -> Scalar {
        match self {
            Sign::Plus => int(1),
            Sign::Minus => int(-1),
        }
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn apply(self, value: Scalar) -> Scalar {
        match self {
            Sign::Plus => value,
            Sign::Minus => -value,
        }
    }

    /// Sign picked up when two adjacent homogeneous vectors are swapped in an
    /// exterior power: `v ∧ w = -(-1)^{|v||w|} w ∧ v`.
    pub fn antisymmetric_swap(deg_a: i32, deg_b: i32) -> Sign {
        if is_odd(deg_a) && is_odd(deg_b) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => write!(f, "+1"),
            Sign::Minus => write!(f, "-1"),
        }
    }
}

/// Formats a scalar as `p` or `p/q`.
pub fn format_scalar(s: &Scalar) -> String {
    if s.is_integer() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

pub(crate) fn is_unit(s: &Scalar) -> bool {
    s.is_one()
}

pub(crate) fn is_minus_unit(s: &Scalar) -> bool {
    s.is_negative() && s.abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_in_lowest_terms() {
        assert_eq!(parse_scalar("6/4").unwrap(), ratio(3, 2));
        assert_eq!(parse_scalar(" -2 ").unwrap(), int(-2));
        assert_eq!(parse_scalar("1/-2").unwrap(), ratio(-1, 2));
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
    }

    #[test]
    fn swap_sign() {
        assert_eq!(Sign::antisymmetric_swap(1, 1), Sign::Plus);
        assert_eq!(Sign::antisymmetric_swap(1, 2), Sign::Minus);
        assert_eq!(Sign::antisymmetric_swap(0, 0), Sign::Minus);
        assert_eq!(parity_sign(-3), Sign::Minus);
    }
}
