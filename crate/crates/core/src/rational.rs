//! Exact rational arithmetic for closed-form intermediates.
//!
//! Every identity in this crate evaluates to an integer, but the closed
//! forms pass through genuinely fractional intermediates (density factors
//! like 1 - 1/p, per-divisor weights divided by φ). Those intermediates
//! live in [`ExactRational`]; the final conversion back to an integer is
//! strict and failing it is a bug, never a rounding opportunity.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A reduced fraction of arbitrary-precision integers.
///
/// Always stored in lowest terms with a positive denominator (the backing
/// `BigRational` maintains both invariants on every operation).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExactRational(BigRational);

impl ExactRational {
    pub fn zero() -> Self {
        ExactRational(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactRational(BigRational::one())
    }

    pub fn from_int(v: i128) -> Self {
        ExactRational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_big(v: BigInt) -> Self {
        ExactRational(BigRational::from_integer(v))
    }

    pub fn new(numer: BigInt, denom: BigInt) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::InvalidParams(
                "rational with zero denominator".into(),
            ));
        }
        Ok(ExactRational(BigRational::new(numer, denom)))
    }

    pub fn ratio(numer: i128, denom: i128) -> Result<Self> {
        Self::new(BigInt::from(numer), BigInt::from(denom))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    /// Positive by construction.
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Exact conversion; errors unless the denominator is 1.
    pub fn to_integer(&self) -> Result<BigInt> {
        if !self.0.is_integer() {
            return Err(Error::NonIntegral(self.to_string()));
        }
        Ok(self.0.to_integer())
    }

    pub fn abs(&self) -> Self {
        ExactRational(self.0.abs())
    }
}

impl From<i128> for ExactRational {
    fn from(v: i128) -> Self {
        Self::from_int(v)
    }
}

impl From<u64> for ExactRational {
    fn from(v: u64) -> Self {
        Self::from_big(BigInt::from(v))
    }
}

impl std::fmt::Display for ExactRational {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                ExactRational((self.0).$method(rhs.0))
            }
        }
        impl std::ops::$trait<&ExactRational> for &ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &ExactRational) -> ExactRational {
                ExactRational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl std::ops::Div for ExactRational {
    type Output = ExactRational;
    fn div(self, rhs: ExactRational) -> ExactRational {
        assert!(!rhs.0.is_zero(), "division by zero rational");
        ExactRational(self.0 / rhs.0)
    }
}

impl std::ops::AddAssign for ExactRational {
    fn add_assign(&mut self, rhs: ExactRational) {
        self.0 += rhs.0;
    }
}

impl std::ops::MulAssign for ExactRational {
    fn mul_assign(&mut self, rhs: ExactRational) {
        self.0 *= rhs.0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_is_automatic() {
        let r = ExactRational::ratio(6, 4).unwrap();
        assert_eq!(r.numer(), &BigInt::from(3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(r.to_string(), "3/2");
    }

    #[test]
    fn to_integer_is_strict() {
        assert_eq!(
            ExactRational::ratio(14, 7).unwrap().to_integer().unwrap(),
            BigInt::from(2)
        );
        assert!(matches!(
            ExactRational::ratio(1, 2).unwrap().to_integer(),
            Err(Error::NonIntegral(_))
        ));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(ExactRational::ratio(1, 0).is_err());
    }

    #[test]
    fn arithmetic() {
        let half = ExactRational::ratio(1, 2).unwrap();
        let third = ExactRational::ratio(1, 3).unwrap();
        assert_eq!((&half + &third).to_string(), "5/6");
        assert_eq!((&half * &third).to_string(), "1/6");
        assert_eq!(
            (half - third).to_string(),
            ExactRational::ratio(1, 6).unwrap().to_string()
        );
    }
}
