//! Exact integer primitives: factorization, divisor enumeration and the
//! classical one-variable functions φ, τ, μ, gcd, lcm.
//!
//! All functions are deterministic and exact. Inputs are `u64`; anything
//! that could overflow the fixed width is computed through `u128` and
//! reported as [`Error::Overflow`] rather than wrapped.

use crate::error::{Error, Result};

/// Canonical prime-power decomposition of a positive integer.
///
/// Pairs `(p, e)` are ordered by strictly increasing prime and every
/// exponent is at least 1. The empty list represents 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    pairs: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.pairs
    }

    pub fn is_one(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Exponent of `p` in the factored integer (0 if `p` does not divide it).
    pub fn exponent_of(&self, p: u64) -> u32 {
        self.pairs
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    /// Multiplies the decomposition back together.
    pub fn value(&self) -> Result<u64> {
        let mut acc: u64 = 1;
        for &(p, e) in &self.pairs {
            for _ in 0..e {
                acc = acc
                    .checked_mul(p)
                    .ok_or(Error::Overflow("Factorization::value"))?;
            }
        }
        Ok(acc)
    }
}

impl std::fmt::Display for Factorization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.pairs.is_empty() {
            return write!(f, "1");
        }
        for (i, &(p, e)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// base^exp mod m with u128 intermediates; m = 1 gives 0.
pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc: u64 = 1;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality test for `u64`.
///
/// Miller-Rabin with the fixed witness set {2, 3, 5, 7, 11, 13, 17, 19,
/// 23, 29, 31, 37}, which is known to be exact for all inputs below 2^64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent-cycle Pollard rho with fixed, deterministic parameters.
/// Only called on odd composites with no factor below the trial bound.
fn pollard_brent(n: u64) -> u64 {
    debug_assert!(n > 1 && n % 2 == 1 && !is_prime(n));
    for c in 1..n {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        let mut saved = x;
        let mut power = 1u64;
        let mut lam = 1u64;
        // Brent's improvement: batch gcds every 128 steps.
        let mut q = 1u64;
        let mut count = 0u32;
        loop {
            if lam == power {
                saved = y;
                power <<= 1;
                lam = 0;
            }
            y = f(y);
            lam += 1;
            let diff = y.abs_diff(saved);
            if diff == 0 {
                break; // cycle degenerated, retry with next c
            }
            q = mul_mod(q, diff, n);
            count += 1;
            if count == 128 {
                d = gcd(q, n);
                if d > 1 {
                    break;
                }
                count = 0;
                q = 1;
                x = y;
            }
        }
        if d == 1 {
            d = gcd(q, n);
        }
        if d > 1 && d < n {
            return d;
        }
        // Backtrack step by step from the last checkpoint.
        if d == n {
            let mut z = x;
            loop {
                z = f(z);
                let diff = z.abs_diff(saved);
                let g = gcd(diff, n);
                if g > 1 {
                    if g < n {
                        return g;
                    }
                    break;
                }
            }
        }
    }
    unreachable!("pollard_brent exhausted all offsets");
}

const TRIAL_BOUND: u64 = 100_000;

fn factor_into(n: u64, out: &mut Vec<(u64, u32)>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push((n, 1));
        return;
    }
    let d = pollard_brent(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

/// Factors a positive integer into its canonical prime-power form.
///
/// Trial division handles every factor up to 10^5; any remaining cofactor
/// is split with deterministic Miller-Rabin certification plus Brent's
/// variant of the rho method. Output is identical across runs.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::ZeroArgument("factorize"));
    }
    let mut pairs: Vec<(u64, u32)> = Vec::new();
    let mut rem = n;
    let mut push = |p: u64, rem: &mut u64| {
        let mut e = 0u32;
        while (*rem).is_multiple_of(p) {
            *rem /= p;
            e += 1;
        }
        if e > 0 {
            pairs.push((p, e));
        }
    };
    push(2, &mut rem);
    push(3, &mut rem);
    let mut p = 5u64;
    while p <= TRIAL_BOUND && p * p <= rem {
        push(p, &mut rem);
        push(p + 2, &mut rem);
        p += 6;
    }
    if rem > 1 {
        let mut large: Vec<(u64, u32)> = Vec::new();
        factor_into(rem, &mut large);
        large.sort_unstable();
        for run in large.chunk_by(|a, b| a.0 == b.0) {
            pairs.push((run[0].0, run.iter().map(|x| x.1).sum()));
        }
    }
    pairs.sort_unstable_by_key(|&(p, _)| p);
    Ok(Factorization { pairs })
}

/// All divisors of `n` in strictly increasing order.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    let fact = factorize(n)?;
    let mut divs: Vec<u64> = vec![1];
    for &(p, e) in fact.pairs() {
        let prev_len = divs.len();
        let mut power = 1u64;
        for _ in 0..e {
            power = power.checked_mul(p).ok_or(Error::Overflow("divisors"))?;
            for i in 0..prev_len {
                let d = divs[i]
                    .checked_mul(power)
                    .ok_or(Error::Overflow("divisors"))?;
                divs.push(d);
            }
        }
    }
    divs.sort_unstable();
    Ok(divs)
}

/// Euler's totient, computed from the factorization.
pub fn euler_phi(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::ZeroArgument("euler_phi"));
    }
    let fact = factorize(n)?;
    let mut acc: u64 = 1;
    for &(p, e) in fact.pairs() {
        let mut pe_minus = 1u64;
        for _ in 0..e - 1 {
            pe_minus *= p;
        }
        acc = acc
            .checked_mul(pe_minus * (p - 1))
            .ok_or(Error::Overflow("euler_phi"))?;
    }
    Ok(acc)
}

/// Number of divisors of `n`.
pub fn tau(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::ZeroArgument("tau"));
    }
    let fact = factorize(n)?;
    let mut acc: u64 = 1;
    for &(_, e) in fact.pairs() {
        acc = acc
            .checked_mul(e as u64 + 1)
            .ok_or(Error::Overflow("tau"))?;
    }
    Ok(acc)
}

/// Möbius function: 0 for non-squarefree `n`, otherwise (-1)^(#prime factors).
pub fn mobius(n: u64) -> Result<i64> {
    if n == 0 {
        return Err(Error::ZeroArgument("mobius"));
    }
    let fact = factorize(n)?;
    if fact.pairs().iter().any(|&(_, e)| e >= 2) {
        return Ok(0);
    }
    Ok(if fact.pairs().len() % 2 == 0 { 1 } else { -1 })
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

/// gcd of a non-empty list. gcd(0, n) = n, so a leading zero entry is
/// absorbed; this is load-bearing for sums whose first term is (a-1, n)
/// with a = 1.
pub fn gcd_many(values: &[u64]) -> Result<u64> {
    if values.is_empty() {
        return Err(Error::EmptyArguments("gcd_many"));
    }
    Ok(values.iter().fold(0u64, |acc, &v| gcd(acc, v)))
}

pub fn lcm(a: u64, b: u64) -> Result<u64> {
    if a == 0 || b == 0 {
        return Err(Error::ZeroArgument("lcm"));
    }
    (a / gcd(a, b)).checked_mul(b).ok_or(Error::Overflow("lcm"))
}

/// lcm of a non-empty list of positive integers, exact or an overflow error.
pub fn lcm_many(values: &[u64]) -> Result<u64> {
    if values.is_empty() {
        return Err(Error::EmptyArguments("lcm_many"));
    }
    let mut acc = 1u64;
    for &v in values {
        acc = lcm(acc, v)?;
    }
    Ok(acc)
}

/// Binomial coefficient, exact in u128 (plenty for the subset sums here).
pub fn binomial(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}
