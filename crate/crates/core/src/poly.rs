//! Integer-coefficient polynomials and evaluation modulo n.

use num::bigint::BigInt;
use num::{Integer, Zero};
use std::str::FromStr;

use crate::error::{Error, Result};

/// A nonzero polynomial in Z[x], coefficients stored low-to-high with
/// trailing zeros trimmed. Coefficients are arbitrary precision.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    /// Builds the canonical form; the zero polynomial is rejected.
    pub fn new(mut coeffs: Vec<BigInt>) -> Result<Self> {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::InvalidParams("zero polynomial".into()));
        }
        Ok(IntPolynomial { coeffs })
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Parses the CLI coefficient format: comma-separated, low-to-high,
    /// e.g. "-1,0,1" is x^2 - 1.
    pub fn parse(s: &str) -> Result<Self> {
        let coeffs = s
            .split(',')
            .map(|part| {
                BigInt::from_str(part.trim())
                    .map_err(|e| Error::Parse(format!("bad coefficient {part:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(coeffs)
    }

    /// The inverse of [`IntPolynomial::parse`].
    pub fn coefficient_string(&self) -> String {
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// P(x) = x
    pub fn identity() -> Self {
        IntPolynomial {
            coeffs: vec![BigInt::zero(), BigInt::from(1)],
        }
    }

    /// P(x) = x - 1
    pub fn x_minus_one() -> Self {
        IntPolynomial {
            coeffs: vec![BigInt::from(-1), BigInt::from(1)],
        }
    }

    /// P(x) = x^ell - 1
    pub fn power_minus_one(ell: u32) -> Result<Self> {
        if ell == 0 {
            return Err(Error::ZeroArgument("power_minus_one"));
        }
        let mut coeffs = vec![BigInt::zero(); ell as usize + 1];
        coeffs[0] = BigInt::from(-1);
        coeffs[ell as usize] = BigInt::from(1);
        Ok(IntPolynomial { coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeffs[0].clone()
    }

    /// Coefficients reduced into [0, n), ready for repeated Horner runs.
    pub fn reduced_coeffs(&self, n: u64) -> Result<Vec<u64>> {
        if n == 0 {
            return Err(Error::ZeroArgument("reduced_coeffs"));
        }
        let big_n = BigInt::from(n);
        Ok(self
            .coeffs
            .iter()
            .map(|c| {
                let r = c.mod_floor(&big_n);
                // mod_floor of a BigInt by a positive modulus fits u64.
                u64::try_from(r).expect("residue fits u64")
            })
            .collect())
    }

    /// P(x) mod n, result in [0, n). Negative x and coefficients reduce
    /// into the canonical residue.
    pub fn eval_mod(&self, x: i128, n: u64) -> Result<u64> {
        let coeffs = self.reduced_coeffs(n)?;
        let xr = x.rem_euclid(n as i128) as u64;
        Ok(horner_mod(&coeffs, xr, n))
    }
}

impl std::fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.coefficient_string())
    }
}

/// Horner evaluation with pre-reduced coefficients; `x` must be in [0, n).
/// Splitting reduction from evaluation keeps sweep loops cheap.
pub fn horner_mod(reduced: &[u64], x: u64, n: u64) -> u64 {
    debug_assert!(n >= 1 && x < n);
    let n128 = n as u128;
    let mut acc: u128 = 0;
    for c in reduced.iter().rev() {
        acc = (acc * x as u128 + *c as u128) % n128;
    }
    acc as u64
}
