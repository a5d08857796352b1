//! Paired evaluators for the gcd/lcm identities: every identity is
//! implemented twice, as a direct nested summation (the brute oracle) and
//! as its closed form, so the two routes can be compared exactly.

mod classical;
mod lcm_fn;
mod main_theorem;
mod multiplicativity;
mod params;
mod remark_f;
mod single_var;

pub use classical::{lkq, menon_classic, pillai_gcd_sum, sivaramakrishnan};
pub use lcm_fn::{h_prime_power, lcm_menon_equal, lcm_menon_w, SUBSET_ENUMERATION_LIMIT};
pub use main_theorem::{corollary_rhs, theorem_main_lhs, theorem_main_rhs, CorollaryVariant};
pub use multiplicativity::{
    check_s_multiplicativity, evaluate_s, SMultOutcome, SMultiplicativityConfig, SPoint,
};
pub use params::{FreeBlock, GFreeBlock, GParams, GRestrictedBlock, MainParams, RestrictedBlock};
pub use remark_f::menon_f;
pub use single_var::{corollary_gk_hk_rhs, gk_hk_params, theorem_g_rhs, GkSpec};

use crate::arith::factorize;
use crate::error::{Error, Result};
use crate::rational::ExactRational;

/// Iteration budget for the brute-force evaluators. The product of the
/// loop ranges is checked up front; anything above the limit is refused
/// with a diagnostic instead of starting an unbounded run.
#[derive(Debug, Clone, Copy)]
pub struct Guard {
    pub limit: u64,
}

impl Default for Guard {
    fn default() -> Self {
        Guard { limit: 100_000_000 }
    }
}

impl Guard {
    pub fn new(limit: u64) -> Self {
        Guard { limit }
    }

    /// Admits a nested loop whose per-dimension ranges are given; returns
    /// the total iteration count.
    pub fn admit<I: IntoIterator<Item = u64>>(&self, ranges: I) -> Result<u64> {
        let mut total: u128 = 1;
        for r in ranges {
            total = total.saturating_mul(r as u128);
            if total > self.limit as u128 {
                return Err(Error::GuardExceeded {
                    required: total,
                    limit: self.limit,
                });
            }
        }
        Ok(total as u64)
    }
}

/// β(s, d) = prod over primes p | s with p ∤ d of (1 - 1/p).
/// The empty product is 1.
pub fn beta(s: u64, d: u64) -> Result<ExactRational> {
    if s == 0 || d == 0 {
        return Err(Error::ZeroArgument("beta"));
    }
    let mut acc = ExactRational::one();
    for &(p, _) in factorize(s)?.pairs() {
        if !d.is_multiple_of(p) {
            acc *= ExactRational::ratio(p as i128 - 1, p as i128)?;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_examples() {
        assert_eq!(beta(1, 5).unwrap(), ExactRational::one());
        assert_eq!(beta(6, 2).unwrap(), ExactRational::ratio(2, 3).unwrap());
        assert_eq!(beta(12, 5).unwrap(), ExactRational::ratio(1, 3).unwrap());
        assert!(beta(0, 1).is_err());
    }

    #[test]
    fn guard_refuses_oversized_loops() {
        let guard = Guard::new(1000);
        assert_eq!(guard.admit([10, 10]).unwrap(), 100);
        assert!(matches!(
            guard.admit([101, 10]),
            Err(Error::GuardExceeded { .. })
        ));
    }
}
