//! The single-function variant: all gcd moduli collapse to one n and the
//! weight is a one-variable function of the joint gcd, which turns the
//! divisor-tuple convolution into a plain divisor sum over n.

use num::bigint::BigInt;
use num::traits::Pow;

use crate::arith::{divisors, euler_phi, mobius};
use crate::congruence::{count_power_congruence, count_roots, count_roots_coprime};
use crate::error::{Error, Result};
use crate::multifn::OneVarFn;
use crate::poly::IntPolynomial;
use crate::rational::ExactRational;

use super::beta;
use super::params::{GFreeBlock, GParams, GRestrictedBlock};

/// (μ ∗ g)(d) for a one-variable g.
fn mobius_transform_one(g: OneVarFn, d: u64) -> Result<i128> {
    let mut acc: i128 = 0;
    for delta in divisors(d)? {
        let m = mobius(delta)?;
        if m != 0 {
            acc += m as i128 * g.eval(d / delta)?;
        }
    }
    Ok(acc)
}

/// Closed form of the T sum:
/// ∏ r_i ∏ t_j · Σ_{d|n} (μ∗g)(d)/d^{k+ℓ} · ∏ N̂_{P_i}(d, s_i) β(s_i, d) · ∏ N_{Q_j}(d).
///
/// The paired brute evaluation is `theorem_main_lhs` on
/// [`GParams::to_main_params`].
pub fn theorem_g_rhs(p: &GParams) -> Result<BigInt> {
    let n = p.modulus();
    let dims = (p.k() + p.ell()) as u32;
    let mut total = ExactRational::zero();
    for d in divisors(n)? {
        let w = mobius_transform_one(p.g(), d)?;
        if w == 0 {
            continue;
        }
        let mut term = ExactRational::new(BigInt::from(w), BigInt::from(d).pow(dims))?;
        for b in p.restricted() {
            term *= ExactRational::from(count_roots_coprime(&b.poly, d, b.coprime_to)?)
                * beta(b.coprime_to, d)?;
        }
        for b in p.free() {
            term *= ExactRational::from(count_roots(&b.poly, d)?);
        }
        total += term;
    }
    let mut prefactor = ExactRational::one();
    for b in p.restricted() {
        prefactor *= ExactRational::from(b.range);
    }
    for b in p.free() {
        prefactor *= ExactRational::from(b.range);
    }
    (prefactor * total).to_integer()
}

/// Polynomial data for the specialized corollary: either explicit P_i or
/// exponents q_i standing for x^{q_i} - 1 (whose root counts are the
/// power-congruence counts).
#[derive(Debug, Clone)]
pub enum GkSpec {
    Polys(Vec<IntPolynomial>),
    PowerExponents(Vec<u32>),
}

impl GkSpec {
    pub fn len(&self) -> usize {
        match self {
            GkSpec::Polys(p) => p.len(),
            GkSpec::PowerExponents(q) => q.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn root_product(&self, d: u64) -> Result<BigInt> {
        let mut acc = BigInt::from(1);
        match self {
            GkSpec::Polys(polys) => {
                for p in polys {
                    acc *= BigInt::from(count_roots_coprime(p, d, d)?);
                }
            }
            GkSpec::PowerExponents(qs) => {
                for &q in qs {
                    acc *= BigInt::from(count_power_congruence(q, d)?);
                }
            }
        }
        Ok(acc)
    }

    pub fn polynomials(&self) -> Result<Vec<IntPolynomial>> {
        match self {
            GkSpec::Polys(p) => Ok(p.clone()),
            GkSpec::PowerExponents(qs) => qs
                .iter()
                .map(|&q| IntPolynomial::power_minus_one(q))
                .collect(),
        }
    }
}

/// φ(n)^k (id_ℓ ∗ W_k)(n) where W_k(d) = φ(d)^{1-k} ∏ root counts at d.
/// The per-divisor values are rational for k >= 2; only the grand total
/// must reduce to an integer.
pub fn corollary_gk_hk_rhs(n: u64, k: usize, ell: usize, spec: &GkSpec) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::ZeroArgument("corollary_gk_hk_rhs"));
    }
    if k == 0 || spec.len() != k {
        return Err(Error::InvalidParams(format!(
            "corollary_gk_hk_rhs: need k >= 1 polynomials (k={k}, given {})",
            spec.len()
        )));
    }
    let mut conv = ExactRational::zero();
    for d in divisors(n)? {
        // id_ell(d) times the weight at n/d.
        let q = n / d;
        let weight = ExactRational::new(
            spec.root_product(q)?,
            BigInt::from(euler_phi(q)?).pow(k as u32 - 1),
        )?;
        conv += ExactRational::from_big(BigInt::from(d).pow(ell as u32)) * weight;
    }
    let phi_k = ExactRational::from_big(BigInt::from(euler_phi(n)?).pow(k as u32));
    (phi_k * conv).to_integer()
}

/// The parameter set whose brute sum is the left side of the corollary:
/// r_i = s_i = n with the given P_i, ℓ free blocks with Q = x, g = id.
pub fn gk_hk_params(n: u64, k: usize, ell: usize, spec: &GkSpec) -> Result<GParams> {
    let polys = spec.polynomials()?;
    if polys.len() != k {
        return Err(Error::InvalidParams(format!(
            "gk_hk_params: expected {k} polynomials, got {}",
            polys.len()
        )));
    }
    let restricted = polys
        .into_iter()
        .map(|poly| GRestrictedBlock {
            range: n,
            coprime_to: n,
            poly,
        })
        .collect();
    let free = (0..ell)
        .map(|_| GFreeBlock {
            range: n,
            poly: IntPolynomial::identity(),
        })
        .collect();
    GParams::new(n, restricted, free, OneVarFn::Id)
}
