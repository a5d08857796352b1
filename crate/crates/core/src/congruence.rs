//! Root counting for polynomial congruences.
//!
//! `count_roots` and friends evaluate per prime power and combine the
//! counts multiplicatively (a Chinese-remainder argument); each also has a
//! `_bruteforce` twin that enumerates the full residue range and serves as
//! the independent oracle in tests. Residues per prime power are counted
//! by direct enumeration; the moduli in play are desk scale.

use crate::arith::{divisors, factorize, gcd, gcd_many, lcm_many};
use crate::error::{Error, Result};
use crate::identities::beta;
use crate::poly::{horner_mod, IntPolynomial};

fn count_roots_prime_power(
    poly: &IntPolynomial,
    pe: u64,
    coprime_prime: Option<u64>,
) -> Result<u64> {
    let reduced = poly.reduced_coeffs(pe)?;
    let mut count = 0u64;
    for x in 1..=pe {
        let xr = x % pe;
        if horner_mod(&reduced, xr, pe) != 0 {
            continue;
        }
        if let Some(p) = coprime_prime {
            // Prime-local form of (x, p^e, s) = 1: when p | s the root must
            // avoid p, otherwise the condition is vacuous.
            if x % p == 0 {
                continue;
            }
        }
        count += 1;
    }
    Ok(count)
}

/// N_P(n): number of x in [1, n] with P(x) = 0 (mod n).
pub fn count_roots(poly: &IntPolynomial, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::ZeroArgument("count_roots"));
    }
    let mut acc = 1u64;
    for &(p, e) in factorize(n)?.pairs() {
        let pe = p.checked_pow(e).ok_or(Error::Overflow("count_roots"))?;
        let c = count_roots_prime_power(poly, pe, None)?;
        acc = acc.checked_mul(c).ok_or(Error::Overflow("count_roots"))?;
    }
    Ok(acc)
}

/// Oracle twin of [`count_roots`]: single pass over the full range [1, n].
pub fn count_roots_bruteforce(poly: &IntPolynomial, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::ZeroArgument("count_roots_bruteforce"));
    }
    let reduced = poly.reduced_coeffs(n)?;
    Ok((1..=n)
        .filter(|&x| horner_mod(&reduced, x % n, n) == 0)
        .count() as u64)
}

/// N̂_P(n, s): roots x of P mod n with (x, n, s) = 1. The classical
/// N̂_P(n) is the special case s = n.
pub fn count_roots_coprime(poly: &IntPolynomial, n: u64, s: u64) -> Result<u64> {
    if n == 0 || s == 0 {
        return Err(Error::ZeroArgument("count_roots_coprime"));
    }
    let mut acc = 1u64;
    for &(p, e) in factorize(n)?.pairs() {
        let pe = p
            .checked_pow(e)
            .ok_or(Error::Overflow("count_roots_coprime"))?;
        let constraint = if s.is_multiple_of(p) { Some(p) } else { None };
        let c = count_roots_prime_power(poly, pe, constraint)?;
        acc = acc
            .checked_mul(c)
            .ok_or(Error::Overflow("count_roots_coprime"))?;
    }
    Ok(acc)
}

/// Oracle twin of [`count_roots_coprime`].
pub fn count_roots_coprime_bruteforce(poly: &IntPolynomial, n: u64, s: u64) -> Result<u64> {
    if n == 0 || s == 0 {
        return Err(Error::ZeroArgument("count_roots_coprime_bruteforce"));
    }
    let reduced = poly.reduced_coeffs(n)?;
    let mut count = 0u64;
    for x in 1..=n {
        if horner_mod(&reduced, x % n, n) == 0 && gcd_many(&[x, n, s])? == 1 {
            count += 1;
        }
    }
    Ok(count)
}

/// C^(ell)(n): number of solutions of x^ell = 1 (mod n).
///
/// Every solution is automatically a unit mod n, so no coprimality filter
/// is applied here; that the filter would be vacuous is a tested property,
/// not an assumption.
pub fn count_power_congruence(ell: u32, n: u64) -> Result<u64> {
    if ell == 0 {
        return Err(Error::ZeroArgument("count_power_congruence"));
    }
    count_roots(&IntPolynomial::power_minus_one(ell)?, n)
}

/// N(d_1, ..., d_r): solutions x mod [d_1, ..., d_r] of the simultaneous
/// congruences P_i(x) = 0 (mod d_i).
pub fn count_simultaneous(polys: &[IntPolynomial], moduli: &[u64]) -> Result<u64> {
    if polys.is_empty() {
        return Err(Error::EmptyArguments("count_simultaneous"));
    }
    if polys.len() != moduli.len() {
        return Err(Error::InvalidParams(format!(
            "count_simultaneous: {} polynomials but {} moduli",
            polys.len(),
            moduli.len()
        )));
    }
    let l = lcm_many(moduli)?;
    let reduced: Vec<Vec<u64>> = polys
        .iter()
        .zip(moduli)
        .map(|(p, &d)| p.reduced_coeffs(d))
        .collect::<Result<_>>()?;
    let mut count = 0u64;
    for x in 1..=l {
        let ok = reduced
            .iter()
            .zip(moduli)
            .all(|(coeffs, &d)| horner_mod(coeffs, x % d, d) == 0);
        if ok {
            count += 1;
        }
    }
    Ok(count)
}

fn check_progression_preconditions(d: u64, r: u64, s: u64) -> Result<()> {
    if d == 0 || r == 0 || s == 0 {
        return Err(Error::ZeroArgument("coprime_progression_count"));
    }
    if !r.is_multiple_of(d) || !r.is_multiple_of(s) {
        return Err(Error::InvalidParams(format!(
            "coprime_progression_count: need d | r and s | r, got d={d}, s={s}, r={r}"
        )));
    }
    Ok(())
}

/// Closed form for the count of 1 <= a <= r with (a, s) = 1 and
/// a = x (mod d), assuming d | r and s | r.
///
/// Zero when (d, s, x) != 1; otherwise (r/d) * prod_{p | s, p ∤ d} (1 - 1/p),
/// which is always an integer under the preconditions.
pub fn coprime_progression_count(d: u64, r: u64, s: u64, x: i128) -> Result<u64> {
    check_progression_preconditions(d, r, s)?;
    let x0 = x.rem_euclid(d as i128) as u64;
    if gcd_many(&[d, s, x0])? != 1 {
        return Ok(0);
    }
    let total = crate::rational::ExactRational::from(r / d) * beta(s, d)?;
    let value = total.to_integer()?;
    u64::try_from(value).map_err(|_| Error::Overflow("coprime_progression_count"))
}

/// Oracle twin of [`coprime_progression_count`].
pub fn coprime_progression_count_bruteforce(d: u64, r: u64, s: u64, x: i128) -> Result<u64> {
    check_progression_preconditions(d, r, s)?;
    let x0 = x.rem_euclid(d as i128) as u64;
    let mut count = 0u64;
    for a in 1..=r {
        if gcd(a, s) == 1 && a % d == x0 {
            count += 1;
        }
    }
    Ok(count)
}

/// Convenience for tests and the CLI: enumerate valid (d, s) pairs for a
/// given r, i.e. all divisor pairs.
pub fn progression_parameter_pairs(r: u64) -> Result<Vec<(u64, u64)>> {
    let divs = divisors(r)?;
    let mut pairs = Vec::with_capacity(divs.len() * divs.len());
    for &d in &divs {
        for &s in &divs {
            pairs.push((d, s));
        }
    }
    Ok(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(coeffs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_ints(coeffs).unwrap()
    }

    #[test]
    fn count_roots_examples() {
        assert_eq!(count_roots(&IntPolynomial::identity(), 7).unwrap(), 1);
        assert_eq!(count_roots(&poly(&[1, 0, 1]), 5).unwrap(), 2); // x^2 + 1 mod 5: {2, 3}
        assert_eq!(count_roots(&poly(&[-1, 0, 1]), 8).unwrap(), 4); // x^2 - 1 mod 8: odd residues
    }

    #[test]
    fn count_roots_modes_agree() {
        let polys = [
            poly(&[-1, 1]),
            poly(&[-1, 0, 1]),
            poly(&[1, 0, 1]),
            poly(&[-1, 0, 0, 1]),
        ];
        for p in &polys {
            for n in 1..=60 {
                assert_eq!(
                    count_roots(p, n).unwrap(),
                    count_roots_bruteforce(p, n).unwrap(),
                    "poly {p} n {n}"
                );
            }
        }
    }

    #[test]
    fn count_roots_coprime_examples() {
        // x = 0 mod 4 has the single root 4, and (4, 4, 2) = 2.
        assert_eq!(
            count_roots_coprime(&IntPolynomial::identity(), 4, 2).unwrap(),
            0
        );
        assert_eq!(count_roots_coprime(&poly(&[-1, 0, 1]), 8, 8).unwrap(), 4);
        assert_eq!(count_roots_coprime(&poly(&[5, 3, 2]), 1, 9).unwrap(), 1);
    }

    #[test]
    fn coprime_modes_agree() {
        let p = poly(&[-1, 0, 1]);
        for n in 1..=40 {
            for s in [1u64, 2, 6, n] {
                assert_eq!(
                    count_roots_coprime(&p, n, s).unwrap(),
                    count_roots_coprime_bruteforce(&p, n, s).unwrap()
                );
            }
        }
    }

    #[test]
    fn power_congruence_examples() {
        for n in [1u64, 2, 9, 100] {
            assert_eq!(count_power_congruence(1, n).unwrap(), 1);
        }
        assert_eq!(count_power_congruence(2, 8).unwrap(), 4);
        assert_eq!(count_power_congruence(2, 5).unwrap(), 2);
    }

    #[test]
    fn simultaneous_examples() {
        let one_constraints = [IntPolynomial::identity(), IntPolynomial::x_minus_one()];
        assert_eq!(count_simultaneous(&one_constraints, &[1, 1]).unwrap(), 1);

        let conflicting = [IntPolynomial::x_minus_one(), IntPolynomial::identity()];
        assert_eq!(count_simultaneous(&conflicting, &[2, 2]).unwrap(), 0);

        // x = 1 mod 2 and x = -1 mod 3 pin x = 5 mod 6.
        let crt = [IntPolynomial::x_minus_one(), poly(&[1, 1])];
        assert_eq!(count_simultaneous(&crt, &[2, 3]).unwrap(), 1);

        assert!(count_simultaneous(&crt, &[2]).is_err());
    }

    #[test]
    fn progression_examples() {
        assert_eq!(coprime_progression_count(2, 12, 6, 1).unwrap(), 4);
        assert_eq!(coprime_progression_count(2, 12, 6, 0).unwrap(), 0);
        assert_eq!(coprime_progression_count(1, 10, 1, 0).unwrap(), 10);
        assert!(coprime_progression_count(5, 12, 6, 1).is_err());
    }

    #[test]
    fn progression_negative_x_reduces() {
        // x = -11 is 1 mod 2.
        assert_eq!(
            coprime_progression_count(2, 12, 6, -11).unwrap(),
            coprime_progression_count(2, 12, 6, 1).unwrap()
        );
    }

    #[test]
    fn progression_modes_agree_small() {
        for r in 1..=36 {
            for (d, s) in progression_parameter_pairs(r).unwrap() {
                for x in 0..d {
                    assert_eq!(
                        coprime_progression_count(d, r, s, x as i128).unwrap(),
                        coprime_progression_count_bruteforce(d, r, s, x as i128).unwrap(),
                        "r={r} d={d} s={s} x={x}"
                    );
                }
            }
        }
    }
}
