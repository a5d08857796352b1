//! The general identity: a nested gcd-weighted sum on one side, a
//! divisor-tuple convolution on the other, plus its specialized corollary
//! closed forms.

use num::bigint::BigInt;

use crate::arith::{divisors, euler_phi, gcd};
use crate::congruence::{count_roots, count_roots_coprime};
use crate::error::{Error, Result};
use crate::grid::advance_indices;
use crate::multifn::MobiusTransform;
use crate::poly::horner_mod;
use crate::rational::ExactRational;

use super::params::MainParams;
use super::{beta, Guard};

/// Gcd values contributed by one restricted block: (poly(a), m) for every
/// admissible a in [1, r]. Each value is a divisor of m.
fn restricted_values(range: u64, gcd_modulus: u64, coprime_to: u64, reduced: &[u64]) -> Vec<u64> {
    let mut vals = Vec::new();
    for a in 1..=range {
        if gcd(a, coprime_to) == 1 {
            let pa = horner_mod(reduced, a % gcd_modulus, gcd_modulus);
            vals.push(gcd(pa, gcd_modulus));
        }
    }
    vals
}

fn free_values(range: u64, gcd_modulus: u64, reduced: &[u64]) -> Vec<u64> {
    (1..=range)
        .map(|b| {
            gcd(
                horner_mod(reduced, b % gcd_modulus, gcd_modulus),
                gcd_modulus,
            )
        })
        .collect()
}

/// Brute-force evaluation of the general sum: every index combination is
/// enumerated and f applied to the gcd tuple. This is the oracle side;
/// it shares nothing with the closed form beyond the parameter set.
pub fn theorem_main_lhs(p: &MainParams, guard: &Guard) -> Result<i128> {
    guard.admit(
        p.restricted()
            .iter()
            .map(|b| b.range)
            .chain(p.free().iter().map(|b| b.range)),
    )?;

    let mut value_lists: Vec<Vec<u64>> = Vec::with_capacity(p.k() + p.ell());
    for b in p.restricted() {
        let reduced = b.poly.reduced_coeffs(b.gcd_modulus)?;
        value_lists.push(restricted_values(
            b.range,
            b.gcd_modulus,
            b.coprime_to,
            &reduced,
        ));
    }
    for b in p.free() {
        let reduced = b.poly.reduced_coeffs(b.gcd_modulus)?;
        value_lists.push(free_values(b.range, b.gcd_modulus, &reduced));
    }
    if value_lists.iter().any(|v| v.is_empty()) {
        return Ok(0);
    }

    let dims: Vec<usize> = value_lists.iter().map(|v| v.len()).collect();
    let arity = value_lists.len();
    let mut idx = vec![0usize; arity];
    let mut buf = vec![0u64; arity];
    let mut acc: i128 = 0;
    loop {
        for i in 0..arity {
            buf[i] = value_lists[i][idx[i]];
        }
        acc = acc
            .checked_add(p.f().eval(&buf)?)
            .ok_or(Error::Overflow("theorem_main_lhs"))?;
        if !advance_indices(&mut idx, &dims) {
            break;
        }
    }
    Ok(acc)
}

struct DivisorWeights {
    divisors: Vec<u64>,
    weights: Vec<ExactRational>,
}

fn product_of_ranges(p: &MainParams) -> ExactRational {
    let mut acc = ExactRational::one();
    for b in p.restricted() {
        acc *= ExactRational::from(b.range);
    }
    for b in p.free() {
        acc *= ExactRational::from(b.range);
    }
    acc
}

/// Shared skeleton of the closed forms: a weighted sum of the Möbius
/// transform of f over divisor tuples of the gcd moduli. The caller
/// supplies the per-divisor weight of each block.
fn weighted_divisor_sum(p: &MainParams, tables: &[DivisorWeights]) -> Result<ExactRational> {
    let transform = MobiusTransform::new(p.f().clone());
    let arity = tables.len();
    let dims: Vec<usize> = tables.iter().map(|t| t.divisors.len()).collect();
    let mut idx = vec![0usize; arity];
    let mut buf = vec![0u64; arity];
    let mut total = ExactRational::zero();
    loop {
        for i in 0..arity {
            buf[i] = tables[i].divisors[idx[i]];
        }
        let w = transform.eval(&buf)?;
        if w != 0 {
            let mut term = ExactRational::from_int(w);
            for i in 0..arity {
                term *= tables[i].weights[idx[i]].clone();
            }
            total += term;
        }
        if !advance_indices(&mut idx, &dims) {
            break;
        }
    }
    Ok(total)
}

/// Weight N̂_P(d, s) β(s, d) / d for every divisor d of the block modulus.
fn restricted_weights(
    gcd_modulus: u64,
    coprime_to: u64,
    poly: &crate::poly::IntPolynomial,
) -> Result<DivisorWeights> {
    let divs = divisors(gcd_modulus)?;
    let weights = divs
        .iter()
        .map(|&d| {
            let roots = count_roots_coprime(poly, d, coprime_to)?;
            let b = beta(coprime_to, d)?;
            Ok(ExactRational::from(roots) * b / ExactRational::from(d))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DivisorWeights {
        divisors: divs,
        weights,
    })
}

/// Weight N_Q(e) / e for every divisor e of the block modulus.
fn free_weights(gcd_modulus: u64, poly: &crate::poly::IntPolynomial) -> Result<DivisorWeights> {
    let divs = divisors(gcd_modulus)?;
    let weights = divs
        .iter()
        .map(|&e| {
            let roots = count_roots(poly, e)?;
            Ok(ExactRational::from(roots) / ExactRational::from(e))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DivisorWeights {
        divisors: divs,
        weights,
    })
}

/// Closed-form evaluation of the general sum. All intermediates are exact
/// rationals; a non-integral total is reported as an error, never rounded.
pub fn theorem_main_rhs(p: &MainParams) -> Result<BigInt> {
    let mut tables = Vec::with_capacity(p.k() + p.ell());
    for b in p.restricted() {
        tables.push(restricted_weights(b.gcd_modulus, b.coprime_to, &b.poly)?);
    }
    for b in p.free() {
        tables.push(free_weights(b.gcd_modulus, &b.poly)?);
    }
    let total = product_of_ranges(p) * weighted_divisor_sum(p, &tables)?;
    total.to_integer()
}

/// The specialized closed forms. Each variant has extra preconditions and
/// evaluates its own formula directly rather than delegating to
/// [`theorem_main_rhs`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorollaryVariant {
    /// ℓ = 0: only restricted indices.
    PureMenon,
    /// k = 0: only free indices (gcd-sum shape).
    PureGcdSum,
    /// m_i | s_i (and s_i | r_i): the β factors collapse to totient ratios.
    MDividesS,
    /// m_i = r_i = s_i and n_j = t_j.
    SSpecial,
}

impl CorollaryVariant {
    pub fn name(self) -> &'static str {
        match self {
            CorollaryVariant::PureMenon => "pure_menon",
            CorollaryVariant::PureGcdSum => "pure_gcd_sum",
            CorollaryVariant::MDividesS => "m_divides_s",
            CorollaryVariant::SSpecial => "s_special",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "pure_menon" => Ok(CorollaryVariant::PureMenon),
            "pure_gcd_sum" => Ok(CorollaryVariant::PureGcdSum),
            "m_divides_s" => Ok(CorollaryVariant::MDividesS),
            "s_special" => Ok(CorollaryVariant::SSpecial),
            other => Err(Error::Parse(format!("unknown corollary variant {other:?}"))),
        }
    }
}

/// Weight N̂_P(d) / φ(d) per divisor; used by the totient-ratio variants.
fn totient_ratio_weights(
    gcd_modulus: u64,
    poly: &crate::poly::IntPolynomial,
) -> Result<DivisorWeights> {
    let divs = divisors(gcd_modulus)?;
    let weights = divs
        .iter()
        .map(|&d| {
            let roots = count_roots_coprime(poly, d, d)?;
            Ok(ExactRational::from(roots) / ExactRational::from(euler_phi(d)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DivisorWeights {
        divisors: divs,
        weights,
    })
}

pub fn corollary_rhs(p: &MainParams, variant: CorollaryVariant) -> Result<BigInt> {
    match variant {
        CorollaryVariant::PureMenon => {
            if p.ell() != 0 {
                return Err(Error::InvalidParams("pure_menon requires ell = 0".into()));
            }
            let mut tables = Vec::with_capacity(p.k());
            for b in p.restricted() {
                tables.push(restricted_weights(b.gcd_modulus, b.coprime_to, &b.poly)?);
            }
            (product_of_ranges(p) * weighted_divisor_sum(p, &tables)?).to_integer()
        }
        CorollaryVariant::PureGcdSum => {
            if p.k() != 0 {
                return Err(Error::InvalidParams("pure_gcd_sum requires k = 0".into()));
            }
            let mut tables = Vec::with_capacity(p.ell());
            for b in p.free() {
                tables.push(free_weights(b.gcd_modulus, &b.poly)?);
            }
            (product_of_ranges(p) * weighted_divisor_sum(p, &tables)?).to_integer()
        }
        CorollaryVariant::MDividesS => {
            for b in p.restricted() {
                if b.coprime_to % b.gcd_modulus != 0 {
                    return Err(Error::InvalidParams(format!(
                        "m_divides_s requires gcd_modulus | coprime_to, got m={}, s={}",
                        b.gcd_modulus, b.coprime_to
                    )));
                }
            }
            let mut prefactor = ExactRational::one();
            for b in p.restricted() {
                prefactor *= ExactRational::from(b.range)
                    * ExactRational::from(euler_phi(b.coprime_to)?)
                    / ExactRational::from(b.coprime_to);
            }
            for b in p.free() {
                prefactor *= ExactRational::from(b.range);
            }
            let mut tables = Vec::with_capacity(p.k() + p.ell());
            for b in p.restricted() {
                tables.push(totient_ratio_weights(b.gcd_modulus, &b.poly)?);
            }
            for b in p.free() {
                tables.push(free_weights(b.gcd_modulus, &b.poly)?);
            }
            (prefactor * weighted_divisor_sum(p, &tables)?).to_integer()
        }
        CorollaryVariant::SSpecial => {
            for b in p.restricted() {
                if b.gcd_modulus != b.range || b.coprime_to != b.range {
                    return Err(Error::InvalidParams(format!(
                        "s_special requires m = r = s, got m={}, s={}, r={}",
                        b.gcd_modulus, b.coprime_to, b.range
                    )));
                }
            }
            for b in p.free() {
                if b.gcd_modulus != b.range {
                    return Err(Error::InvalidParams(format!(
                        "s_special requires n = t, got n={}, t={}",
                        b.gcd_modulus, b.range
                    )));
                }
            }
            let mut prefactor = ExactRational::one();
            for b in p.restricted() {
                prefactor *= ExactRational::from(euler_phi(b.gcd_modulus)?);
            }
            for b in p.free() {
                prefactor *= ExactRational::from(b.gcd_modulus);
            }
            let mut tables = Vec::with_capacity(p.k() + p.ell());
            for b in p.restricted() {
                tables.push(totient_ratio_weights(b.gcd_modulus, &b.poly)?);
            }
            for b in p.free() {
                tables.push(free_weights(b.gcd_modulus, &b.poly)?);
            }
            (prefactor * weighted_divisor_sum(p, &tables)?).to_integer()
        }
    }
}
