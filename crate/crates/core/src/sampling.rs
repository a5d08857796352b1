//! Seeded parameter generators for the randomized verification sweeps.
//!
//! Both the acceptance tests and the CLI draw from these, so a seed fully
//! determines the parameter stream everywhere.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::divisors;
use crate::error::Result;
use crate::identities::{
    CorollaryVariant, FreeBlock, GFreeBlock, GParams, GRestrictedBlock, MainParams, RestrictedBlock,
};
use crate::multifn::{FnRegistryId, OneVarFn};
use crate::poly::IntPolynomial;

/// Fixed polynomial pool for sampled instances.
pub fn poly_pool() -> Vec<IntPolynomial> {
    [
        vec![-1i64, 1],    // x - 1
        vec![0, 1],        // x
        vec![1, 1],        // x + 1
        vec![-1, 0, 1],    // x^2 - 1
        vec![1, 0, 1],     // x^2 + 1
        vec![-1, 0, 0, 1], // x^3 - 1
        vec![3, 2],        // 2x + 3
        vec![1, 1, 1],     // x^2 + x + 1
    ]
    .iter()
    .map(|c| IntPolynomial::from_ints(c).expect("pool polynomials are nonzero"))
    .collect()
}

fn random_divisor(rng: &mut ChaCha8Rng, n: u64) -> u64 {
    let divs = divisors(n).expect("positive n");
    divs[rng.gen_range(0..divs.len())]
}

fn random_poly(rng: &mut ChaCha8Rng, pool: &[IntPolynomial]) -> IntPolynomial {
    pool[rng.gen_range(0..pool.len())].clone()
}

/// Draws random `MainParams` with k + ℓ <= max_dims and all ranges
/// <= max_range. Every fourth instance uses a seeded random table for f,
/// so a 200-instance stream carries 50 non-multiplicative functions.
pub struct MainSampler {
    rng: ChaCha8Rng,
    max_range: u64,
    max_dims: usize,
    variant: Option<CorollaryVariant>,
    pool: Vec<IntPolynomial>,
    counter: usize,
}

impl MainSampler {
    pub fn new(seed: u64, max_range: u64, max_dims: usize) -> Self {
        MainSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            max_range: max_range.max(1),
            max_dims: max_dims.max(1),
            variant: None,
            pool: poly_pool(),
            counter: 0,
        }
    }

    /// Restricts the draws so the given corollary's preconditions hold.
    pub fn with_variant(
        seed: u64,
        max_range: u64,
        max_dims: usize,
        variant: CorollaryVariant,
    ) -> Self {
        let mut s = Self::new(seed, max_range, max_dims);
        s.variant = Some(variant);
        s
    }

    fn draw_f(&mut self, arity: usize) -> Result<crate::multifn::MultiFn> {
        let id = if self.counter.is_multiple_of(4) {
            FnRegistryId::RandomTable {
                seed: self.rng.gen(),
                box_bound: self.max_range,
            }
        } else {
            match self.rng.gen_range(0..8) {
                0 => FnRegistryId::GcdOfArgs,
                1 => FnRegistryId::LcmOfArgs,
                2 => FnRegistryId::Zeta,
                3 => FnRegistryId::Delta,
                4 => FnRegistryId::SumOfArgs,
                5 => FnRegistryId::ProductOfPowers(
                    (0..arity).map(|_| self.rng.gen_range(0..=2)).collect(),
                ),
                6 => FnRegistryId::ComposeSingle(OneVarFn::Phi),
                _ => FnRegistryId::ComposeSingle(OneVarFn::Id),
            }
        };
        id.resolve(arity)
    }

    pub fn next_params(&mut self) -> Result<MainParams> {
        let dims = self.rng.gen_range(1..=self.max_dims);
        let (k, ell) = match self.variant {
            Some(CorollaryVariant::PureMenon) => (dims, 0),
            Some(CorollaryVariant::PureGcdSum) => (0, dims),
            _ => {
                let k = self.rng.gen_range(0..=dims);
                (k, dims - k)
            }
        };
        let mut restricted = Vec::with_capacity(k);
        for _ in 0..k {
            let block = match self.variant {
                Some(CorollaryVariant::SSpecial) => {
                    let m = self.rng.gen_range(1..=self.max_range);
                    RestrictedBlock {
                        range: m,
                        gcd_modulus: m,
                        coprime_to: m,
                        poly: random_poly(&mut self.rng, &self.pool),
                    }
                }
                Some(CorollaryVariant::MDividesS) => {
                    let r = self.rng.gen_range(1..=self.max_range);
                    let s = random_divisor(&mut self.rng, r);
                    let m = random_divisor(&mut self.rng, s);
                    RestrictedBlock {
                        range: r,
                        gcd_modulus: m,
                        coprime_to: s,
                        poly: random_poly(&mut self.rng, &self.pool),
                    }
                }
                _ => {
                    let r = self.rng.gen_range(1..=self.max_range);
                    RestrictedBlock {
                        range: r,
                        gcd_modulus: random_divisor(&mut self.rng, r),
                        coprime_to: random_divisor(&mut self.rng, r),
                        poly: random_poly(&mut self.rng, &self.pool),
                    }
                }
            };
            restricted.push(block);
        }
        let mut free = Vec::with_capacity(ell);
        for _ in 0..ell {
            let block = match self.variant {
                Some(CorollaryVariant::SSpecial) => {
                    let n = self.rng.gen_range(1..=self.max_range);
                    FreeBlock {
                        range: n,
                        gcd_modulus: n,
                        poly: random_poly(&mut self.rng, &self.pool),
                    }
                }
                _ => {
                    let t = self.rng.gen_range(1..=self.max_range);
                    FreeBlock {
                        range: t,
                        gcd_modulus: random_divisor(&mut self.rng, t),
                        poly: random_poly(&mut self.rng, &self.pool),
                    }
                }
            };
            free.push(block);
        }
        let f = self.draw_f(dims)?;
        self.counter += 1;
        MainParams::new(restricted, free, f)
    }
}

/// Draws random `GParams`: a shared modulus n <= max_modulus, ranges that
/// are multiples of n up to max_range, and g from the one-variable pool.
pub struct GSampler {
    rng: ChaCha8Rng,
    max_modulus: u64,
    max_range: u64,
    max_dims: usize,
    pool: Vec<IntPolynomial>,
}

impl GSampler {
    pub fn new(seed: u64, max_modulus: u64, max_range: u64, max_dims: usize) -> Self {
        GSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            max_modulus: max_modulus.max(1),
            max_range: max_range.max(1),
            max_dims: max_dims.max(1),
            pool: poly_pool(),
        }
    }

    pub fn next_params(&mut self) -> Result<GParams> {
        let dims = self.rng.gen_range(1..=self.max_dims);
        let k = self.rng.gen_range(0..=dims);
        let ell = dims - k;
        let n = self.rng.gen_range(1..=self.max_modulus.min(self.max_range));
        let max_multiple = (self.max_range / n).max(1);
        let mut restricted = Vec::with_capacity(k);
        for _ in 0..k {
            let r = n * self.rng.gen_range(1..=max_multiple);
            restricted.push(GRestrictedBlock {
                range: r,
                coprime_to: random_divisor(&mut self.rng, r),
                poly: random_poly(&mut self.rng, &self.pool),
            });
        }
        let mut free = Vec::with_capacity(ell);
        for _ in 0..ell {
            free.push(GFreeBlock {
                range: n * self.rng.gen_range(1..=max_multiple),
                poly: random_poly(&mut self.rng, &self.pool),
            });
        }
        let g = match self.rng.gen_range(0..5) {
            0 => OneVarFn::Id,
            1 => OneVarFn::Phi,
            2 => OneVarFn::Tau,
            3 => OneVarFn::Mobius,
            _ => OneVarFn::One,
        };
        GParams::new(n, restricted, free, g)
    }
}

/// Seeded tuples in [1, max]^k, e.g. for sampled lcm-identity sweeps.
pub fn random_tuples(seed: u64, count: usize, k: usize, max: u64) -> Vec<Vec<u64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| (0..k).map(|_| rng.gen_range(1..=max.max(1))).collect())
        .collect()
}
