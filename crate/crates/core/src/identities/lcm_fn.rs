//! The lcm-of-gcds identity: the sum of [(a_1 - 1, n_1), ..., (a_k - 1, n_k)]
//! over units a_i factors as a totient product times a multiplicative,
//! symmetric function h evaluated prime by prime.

use std::time::Instant;

use num::bigint::BigInt;
use num::traits::Pow;
use num::One;

use crate::arith::{binomial, euler_phi, factorize, gcd, is_prime, lcm_many};
use crate::error::{Error, Result};
use crate::grid::advance_indices;
use crate::rational::ExactRational;
use crate::report::IdentityReport;

use super::Guard;

/// The alternating subset sums in `h_prime_power` enumerate subsets of the
/// nonzero-exponent positions; refuse beyond this many positions.
pub const SUBSET_ENUMERATION_LIMIT: usize = 20;

/// h(p^{ν_1}, ..., p^{ν_k}), exact.
///
/// With the exponents sorted descending and t of them nonzero:
///
/// ```text
/// 1 + (ν_1 + ... + ν_t)
///   + Σ_{j=1}^{t-1} (-1)^j p^j / ((p-1)^j (p^j - 1))
///     · ( C(t, j+1) - Σ_{|M| = j+1} p^{-j ν_{max M}} )
/// ```
///
/// where M ranges over subsets of the positions {1..t} and ν_{max M} is
/// the exponent at the largest position in M (the smallest exponent of M,
/// by the sorting).
pub fn h_prime_power(p: u64, exponents: &[u32]) -> Result<ExactRational> {
    if !is_prime(p) {
        return Err(Error::InvalidParams(format!(
            "h_prime_power: {p} is not prime"
        )));
    }
    let mut nu: Vec<u32> = exponents.iter().copied().filter(|&e| e > 0).collect();
    nu.sort_unstable_by(|a, b| b.cmp(a));
    let t = nu.len();
    if t > SUBSET_ENUMERATION_LIMIT {
        return Err(Error::InvalidParams(format!(
            "h_prime_power: {t} nonzero exponents exceed the subset enumeration limit of \
             {SUBSET_ENUMERATION_LIMIT}"
        )));
    }
    let linear: i128 = 1 + nu.iter().map(|&v| v as i128).sum::<i128>();
    let mut h = ExactRational::from_int(linear);
    if t < 2 {
        return Ok(h);
    }

    // buckets[j] = Σ over subsets of size j+1 of p^{-j ν_{max M}}.
    let mut buckets = vec![ExactRational::zero(); t];
    for mask in 1u32..(1u32 << t) {
        let size = mask.count_ones();
        if size < 2 {
            continue;
        }
        let j = (size - 1) as usize;
        let max_pos = (31 - mask.leading_zeros()) as usize;
        let denom = BigInt::from(p).pow(j as u32 * nu[max_pos]);
        buckets[j] += ExactRational::new(BigInt::one(), denom)?;
    }
    for (j, bucket) in buckets.into_iter().enumerate().skip(1).take(t - 1) {
        let pj = BigInt::from(p).pow(j as u32);
        let mut numer = pj.clone();
        if j % 2 == 1 {
            numer = -numer;
        }
        let denom = BigInt::from(p - 1).pow(j as u32) * (pj - BigInt::one());
        let coeff = ExactRational::new(numer, denom)?;
        let count = ExactRational::from_big(BigInt::from(binomial(t as u32, j as u32 + 1)));
        h += coeff * (count - bucket);
    }
    Ok(h)
}

fn lcm_sum_lhs(moduli: &[u64], guard: &Guard) -> Result<i128> {
    guard.admit(moduli.iter().copied())?;
    let value_lists: Vec<Vec<u64>> = moduli
        .iter()
        .map(|&n| {
            (1..=n)
                .filter(|&a| gcd(a, n) == 1)
                .map(|a| gcd(a - 1, n))
                .collect()
        })
        .collect();
    let dims: Vec<usize> = value_lists.iter().map(|v| v.len()).collect();
    let k = moduli.len();
    let mut idx = vec![0usize; k];
    let mut buf = vec![0u64; k];
    let mut acc: i128 = 0;
    loop {
        for i in 0..k {
            buf[i] = value_lists[i][idx[i]];
        }
        acc = acc
            .checked_add(lcm_many(&buf)? as i128)
            .ok_or(Error::Overflow("lcm_sum_lhs"))?;
        if !advance_indices(&mut idx, &dims) {
            break;
        }
    }
    Ok(acc)
}

fn phi_product(moduli: &[u64]) -> Result<BigInt> {
    let mut acc = BigInt::one();
    for &n in moduli {
        acc *= BigInt::from(euler_phi(n)?);
    }
    Ok(acc)
}

/// W(n_1, ..., n_k): brute lcm-of-gcds sum against
/// φ(n_1) ⋯ φ(n_k) · ∏_p h(p, exponent vector of p across the n_i).
pub fn lcm_menon_w(moduli: &[u64], guard: &Guard) -> Result<IdentityReport> {
    if moduli.is_empty() {
        return Err(Error::EmptyArguments("lcm_menon_w"));
    }
    if moduli.contains(&0) {
        return Err(Error::ZeroArgument("lcm_menon_w"));
    }
    let started = Instant::now();
    let lhs = lcm_sum_lhs(moduli, guard)?;

    let factorizations: Vec<_> = moduli
        .iter()
        .map(|&n| factorize(n))
        .collect::<Result<_>>()?;
    let mut primes: Vec<u64> = factorizations
        .iter()
        .flat_map(|f| f.pairs().iter().map(|&(p, _)| p))
        .collect();
    primes.sort_unstable();
    primes.dedup();

    let mut rhs = ExactRational::from_big(phi_product(moduli)?);
    for p in primes {
        let exps: Vec<u32> = factorizations.iter().map(|f| f.exponent_of(p)).collect();
        rhs *= h_prime_power(p, &exps)?;
    }

    let mut params = std::collections::BTreeMap::new();
    params.insert(
        "n".to_string(),
        moduli
            .iter()
            .map(|n| n.to_string())
            .collect::<Vec<_>>()
            .join(","),
    );
    Ok(IdentityReport::new(
        "lcm_w",
        params,
        BigInt::from(lhs),
        rhs.to_integer()?,
        started.elapsed(),
    ))
}

/// The equal-moduli case: the per-prime factor has a closed form in k and
/// the prime power, with no subset enumeration.
pub fn lcm_menon_equal(n: u64, k: usize, guard: &Guard) -> Result<IdentityReport> {
    if n == 0 {
        return Err(Error::ZeroArgument("lcm_menon_equal"));
    }
    if k == 0 {
        return Err(Error::ZeroArgument("lcm_menon_equal k"));
    }
    let started = Instant::now();
    let moduli = vec![n; k];
    let lhs = lcm_sum_lhs(&moduli, guard)?;

    let mut rhs = ExactRational::from_big(BigInt::from(euler_phi(n)?).pow(k as u32));
    for &(p, nu) in factorize(n)?.pairs() {
        // 1 + k ν + Σ_{j=1}^{k-1} (-1)^j C(k, j+1) p^j / ((p-1)^j (p^j-1)) (1 - p^{-ν j})
        let mut factor = ExactRational::from_int(1 + k as i128 * nu as i128);
        for j in 1..k {
            let pj = BigInt::from(p).pow(j as u32);
            let mut numer = BigInt::from(binomial(k as u32, j as u32 + 1)) * &pj;
            if j % 2 == 1 {
                numer = -numer;
            }
            let denom = BigInt::from(p - 1).pow(j as u32) * (&pj - BigInt::one());
            let coeff = ExactRational::new(numer, denom)?;
            let tail = ExactRational::one()
                - ExactRational::new(BigInt::one(), BigInt::from(p).pow(nu * j as u32))?;
            factor += coeff * tail;
        }
        rhs *= factor;
    }

    let mut params = std::collections::BTreeMap::new();
    params.insert("n".to_string(), n.to_string());
    params.insert("k".to_string(), k.to_string());
    Ok(IdentityReport::new(
        "lcm_equal",
        params,
        BigInt::from(lhs),
        rhs.to_integer()?,
        started.elapsed(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h_examples() {
        assert_eq!(h_prime_power(5, &[0, 0]).unwrap(), ExactRational::one());
        assert_eq!(
            h_prime_power(3, &[1, 0]).unwrap(),
            ExactRational::from_int(2)
        );
        assert_eq!(
            h_prime_power(2, &[2, 2]).unwrap(),
            ExactRational::ratio(7, 2).unwrap()
        );
        assert!(h_prime_power(4, &[1]).is_err());
    }

    #[test]
    fn h_is_symmetric() {
        let a = h_prime_power(3, &[2, 1, 0]).unwrap();
        let b = h_prime_power(3, &[0, 2, 1]).unwrap();
        let c = h_prime_power(3, &[1, 0, 2]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
    }

    #[test]
    fn w_examples() {
        let guard = Guard::default();
        for (moduli, expected) in [
            (vec![12u64], 24i64),
            (vec![3, 3], 10),
            (vec![4, 4], 14),
            (vec![4, 2], 6),
        ] {
            let r = lcm_menon_w(&moduli, &guard).unwrap();
            assert!(r.equal, "moduli {moduli:?}");
            assert_eq!(r.lhs, BigInt::from(expected), "moduli {moduli:?}");
        }
    }

    #[test]
    fn equal_moduli_examples() {
        let guard = Guard::default();
        for ((n, k), expected) in [((4u64, 2usize), 14i64), ((3, 2), 10), ((1, 5), 1)] {
            let r = lcm_menon_equal(n, k, &guard).unwrap();
            assert!(r.equal, "n={n} k={k}");
            assert_eq!(r.lhs, BigInt::from(expected));
        }
    }

    #[test]
    fn equal_moduli_matches_w_on_diagonal() {
        let guard = Guard::default();
        for n in 1..=20u64 {
            for k in 1..=3usize {
                let a = lcm_menon_equal(n, k, &guard).unwrap();
                let b = lcm_menon_w(&vec![n; k], &guard).unwrap();
                assert_eq!(a.rhs, b.rhs, "n={n} k={k}");
            }
        }
    }
}
