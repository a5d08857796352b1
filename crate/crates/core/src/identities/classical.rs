//! The named classical identities, each as brute sum vs closed form.

use std::time::Instant;

use num::bigint::BigInt;
use num::traits::Pow;

use crate::arith::{divisors, euler_phi, factorize, gcd, tau};
use crate::congruence::count_power_congruence;
use crate::error::{Error, Result};
use crate::grid::advance_indices;
use crate::rational::ExactRational;
use crate::report::{params_from, IdentityReport};

use super::Guard;

/// Classic identity: sum of (a-1, n) over units a mod n equals φ(n) τ(n).
pub fn menon_classic(n: u64) -> Result<IdentityReport> {
    if n == 0 {
        return Err(Error::ZeroArgument("menon_classic"));
    }
    let started = Instant::now();
    let mut lhs: i128 = 0;
    for a in 1..=n {
        if gcd(a, n) == 1 {
            lhs += gcd(a - 1, n) as i128; // a = 1 contributes (0, n) = n
        }
    }
    let rhs = BigInt::from(euler_phi(n)?) * BigInt::from(tau(n)?);
    Ok(IdentityReport::new(
        "menon",
        params_from([("n", n)]),
        BigInt::from(lhs),
        rhs,
        started.elapsed(),
    ))
}

/// Largest divisor of `n` coprime to `m`: delete from n's factorization
/// every prime dividing m.
fn coprime_part(n: u64, m: u64) -> Result<u64> {
    let mut acc: u64 = 1;
    for &(p, e) in factorize(n)?.pairs() {
        if !m.is_multiple_of(p) {
            acc *= p.pow(e);
        }
    }
    Ok(acc)
}

/// Three-parameter generalization: sum over a <= t with (a, m) = 1 of
/// (a - 1, n), with m | t and n | t.
pub fn sivaramakrishnan(m: u64, n: u64, t: u64) -> Result<IdentityReport> {
    if m == 0 || n == 0 || t == 0 {
        return Err(Error::ZeroArgument("sivaramakrishnan"));
    }
    if !t.is_multiple_of(m) || !t.is_multiple_of(n) {
        return Err(Error::InvalidParams(format!(
            "sivaramakrishnan: need m | t and n | t, got m={m}, n={n}, t={t}"
        )));
    }
    let started = Instant::now();
    let mut lhs: i128 = 0;
    for a in 1..=t {
        if gcd(a, m) == 1 {
            lhs += gcd((a - 1) % n, n) as i128;
        }
    }
    // t φ(m) τ(n) / m times the density correction over the part of n
    // coprime to m.
    let mut rhs =
        ExactRational::from(t) * ExactRational::from(euler_phi(m)?) * ExactRational::from(tau(n)?)
            / ExactRational::from(m);
    let n1 = coprime_part(n, m)?;
    for &(p, e) in factorize(n1)?.pairs() {
        let nu = e as i128;
        let p = p as i128;
        // 1 - nu / ((nu + 1) p)
        rhs *= ExactRational::ratio((nu + 1) * p - nu, (nu + 1) * p)?;
    }
    Ok(IdentityReport::new(
        "sivaramakrishnan",
        params_from([("m", m), ("n", n), ("t", t)]),
        BigInt::from(lhs),
        rhs.to_integer()?,
        started.elapsed(),
    ))
}

/// Gcd-sum: sum of (a, n) over a in [1, n] equals n times the divisor sum
/// of φ(d)/d.
pub fn pillai_gcd_sum(n: u64) -> Result<IdentityReport> {
    if n == 0 {
        return Err(Error::ZeroArgument("pillai_gcd_sum"));
    }
    let started = Instant::now();
    let mut lhs: i128 = 0;
    for a in 1..=n {
        lhs += gcd(a, n) as i128;
    }
    let mut sum = ExactRational::zero();
    for d in divisors(n)? {
        sum += ExactRational::from(euler_phi(d)?) / ExactRational::from(d);
    }
    let rhs = (ExactRational::from(n) * sum).to_integer()?;
    Ok(IdentityReport::new(
        "pillai",
        params_from([("n", n)]),
        BigInt::from(lhs),
        rhs,
        started.elapsed(),
    ))
}

/// Power-twisted identity: sum over units a and free b_1..b_k of
/// (a^ell - 1, b_1, ..., b_k, n), against φ(n) times the convolution of
/// the k-th power function with the root count of x^ell = 1.
pub fn lkq(n: u64, k: usize, ell: u32, guard: &Guard) -> Result<IdentityReport> {
    if n == 0 {
        return Err(Error::ZeroArgument("lkq"));
    }
    if ell == 0 {
        return Err(Error::ZeroArgument("lkq ell"));
    }
    guard.admit(std::iter::repeat_n(n, k + 1))?;
    let started = Instant::now();

    let mut lhs: i128 = 0;
    let dims = vec![n as usize; k];
    for a in 1..=n {
        if gcd(a, n) != 1 {
            continue;
        }
        let apow = crate::arith::pow_mod(a, ell as u64, n);
        // (a^ell - 1) mod n; adding n first keeps the subtraction in range.
        let base = gcd((apow + n - 1) % n, n);
        let mut idx = vec![0usize; k];
        loop {
            let mut g = base;
            for &ix in &idx {
                g = gcd(g, ix as u64 + 1);
            }
            lhs += g as i128;
            if !advance_indices(&mut idx, &dims) {
                break;
            }
        }
    }

    // (id_k ∗ C^(ell))(n); id_0 is the all-ones function.
    let mut conv = BigInt::from(0);
    for d in divisors(n)? {
        let dk = BigInt::from(d).pow(k as u32);
        conv += dk * BigInt::from(count_power_congruence(ell, n / d)?);
    }
    let rhs = BigInt::from(euler_phi(n)?) * conv;

    Ok(IdentityReport::new(
        "lkq",
        params_from([
            ("n", n.to_string()),
            ("k", k.to_string()),
            ("ell", ell.to_string()),
        ]),
        BigInt::from(lhs),
        rhs,
        started.elapsed(),
    ))
}
