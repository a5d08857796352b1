//! Sampled multiplicativity check for the general sum S viewed as a
//! function of the 2k+ℓ moduli (m_1..m_k, s_1..s_k, n_1..n_ℓ), with
//! r_i = [m_i, s_i] and t_j = n_j fixed by the statement.

use num::bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::lcm;
use crate::error::{Error, Result};
use crate::multifn::{FnRegistryId, MultiFn};
use crate::poly::IntPolynomial;

use super::main_theorem::theorem_main_rhs;
use super::params::{FreeBlock, MainParams, RestrictedBlock};

/// One argument vector of S: the k gcd moduli, the k coprimality moduli
/// and the ℓ free moduli.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SPoint {
    pub gcd_moduli: Vec<u64>,
    pub coprime_moduli: Vec<u64>,
    pub free_moduli: Vec<u64>,
}

impl SPoint {
    fn coordinates(&self) -> impl Iterator<Item = u64> + '_ {
        self.gcd_moduli
            .iter()
            .chain(&self.coprime_moduli)
            .chain(&self.free_moduli)
            .copied()
    }

    pub fn coordinate_product(&self) -> u128 {
        self.coordinates().map(|v| v as u128).product()
    }

    /// Coordinatewise product of two points.
    pub fn combined(&self, other: &SPoint) -> Result<SPoint> {
        let mul = |a: &[u64], b: &[u64]| -> Result<Vec<u64>> {
            a.iter()
                .zip(b)
                .map(|(&x, &y)| x.checked_mul(y).ok_or(Error::Overflow("SPoint::combined")))
                .collect()
        };
        Ok(SPoint {
            gcd_moduli: mul(&self.gcd_moduli, &other.gcd_moduli)?,
            coprime_moduli: mul(&self.coprime_moduli, &other.coprime_moduli)?,
            free_moduli: mul(&self.free_moduli, &other.free_moduli)?,
        })
    }

    pub fn describe(&self) -> String {
        let join = |v: &[u64]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        format!(
            "m={};s={};n={}",
            join(&self.gcd_moduli),
            join(&self.coprime_moduli),
            join(&self.free_moduli)
        )
    }
}

/// Closed-form value of S at one point, with r_i = [m_i, s_i], t_j = n_j.
pub fn evaluate_s(
    point: &SPoint,
    restricted_polys: &[IntPolynomial],
    free_polys: &[IntPolynomial],
    f: &MultiFn,
) -> Result<BigInt> {
    let k = restricted_polys.len();
    let ell = free_polys.len();
    if point.gcd_moduli.len() != k
        || point.coprime_moduli.len() != k
        || point.free_moduli.len() != ell
    {
        return Err(Error::InvalidParams(format!(
            "S point has {}+{}+{} coordinates, expected {k}+{k}+{ell}",
            point.gcd_moduli.len(),
            point.coprime_moduli.len(),
            point.free_moduli.len()
        )));
    }
    let restricted = (0..k)
        .map(|i| {
            Ok(RestrictedBlock {
                range: lcm(point.gcd_moduli[i], point.coprime_moduli[i])?,
                gcd_modulus: point.gcd_moduli[i],
                coprime_to: point.coprime_moduli[i],
                poly: restricted_polys[i].clone(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let free = (0..ell)
        .map(|j| FreeBlock {
            range: point.free_moduli[j],
            gcd_modulus: point.free_moduli[j],
            poly: free_polys[j].clone(),
        })
        .collect();
    theorem_main_rhs(&MainParams::new(restricted, free, f.clone())?)
}

#[derive(Debug, Clone)]
pub struct SMultiplicativityConfig {
    pub restricted_polys: Vec<IntPolynomial>,
    pub free_polys: Vec<IntPolynomial>,
    /// Should resolve to a multiplicative function; the statement does not
    /// cover non-multiplicative f.
    pub f: FnRegistryId,
    pub samples: usize,
    pub seed: u64,
    /// Sampled coordinates lie in [1, coordinate_bound].
    pub coordinate_bound: u64,
}

impl SMultiplicativityConfig {
    pub fn arity(&self) -> usize {
        self.restricted_polys.len() + self.free_polys.len()
    }

    /// Deterministic sample stream: each pair has coprime coordinate
    /// products (the second point is drawn from values coprime to the
    /// first point's product).
    pub fn sample_pairs(&self) -> Vec<(SPoint, SPoint)> {
        let k = self.restricted_polys.len();
        let ell = self.free_polys.len();
        let bound = self.coordinate_bound.max(1);
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut pairs = Vec::with_capacity(self.samples);
        for _ in 0..self.samples {
            let draw = |rng: &mut ChaCha8Rng, len: usize| -> Vec<u64> {
                (0..len).map(|_| rng.gen_range(1..=bound)).collect()
            };
            let left = SPoint {
                gcd_moduli: draw(&mut rng, k),
                coprime_moduli: draw(&mut rng, k),
                free_moduli: draw(&mut rng, ell),
            };
            let prod = left.coordinate_product();
            let candidates: Vec<u64> = (1..=bound)
                .filter(|&v| gcd128(v as u128, prod) == 1)
                .collect();
            let draw_coprime = |rng: &mut ChaCha8Rng, len: usize| -> Vec<u64> {
                (0..len)
                    .map(|_| candidates[rng.gen_range(0..candidates.len())])
                    .collect()
            };
            let right = SPoint {
                gcd_moduli: draw_coprime(&mut rng, k),
                coprime_moduli: draw_coprime(&mut rng, k),
                free_moduli: draw_coprime(&mut rng, ell),
            };
            pairs.push((left, right));
        }
        pairs
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)] // constructed once per check, size is irrelevant
pub enum SMultOutcome {
    Pass,
    Counterexample {
        left: SPoint,
        right: SPoint,
        combined: BigInt,
        split: BigInt,
    },
}

impl SMultOutcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, SMultOutcome::Pass)
    }
}

/// Verifies S(a.b) = S(a) S(b) over the config's sampled coprime pairs;
/// the first failing pair (in generation order) is reported.
pub fn check_s_multiplicativity(cfg: &SMultiplicativityConfig) -> Result<SMultOutcome> {
    let f = cfg.f.resolve(cfg.arity())?;
    for (left, right) in cfg.sample_pairs() {
        let s_left = evaluate_s(&left, &cfg.restricted_polys, &cfg.free_polys, &f)?;
        let s_right = evaluate_s(&right, &cfg.restricted_polys, &cfg.free_polys, &f)?;
        let s_combined = evaluate_s(
            &left.combined(&right)?,
            &cfg.restricted_polys,
            &cfg.free_polys,
            &f,
        )?;
        let split = &s_left * &s_right;
        if s_combined != split {
            return Ok(SMultOutcome::Counterexample {
                left,
                right,
                combined: s_combined,
                split,
            });
        }
    }
    Ok(SMultOutcome::Pass)
}

fn gcd128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}
