//! The one-index multi-polynomial sum F(n) and its convolution closed
//! form over simultaneous root counts.

use std::time::Instant;

use num::bigint::BigInt;

use crate::arith::{divisors, gcd, lcm_many};
use crate::congruence::count_simultaneous;
use crate::error::{Error, Result};
use crate::grid::advance_indices;
use crate::multifn::{MobiusTransform, MultiFn};
use crate::poly::IntPolynomial;
use crate::rational::ExactRational;
use crate::report::IdentityReport;

use super::Guard;

/// F(n) = Σ_{a=1..n} f((P_1(a), n), ..., (P_r(a), n)) against
/// n Σ_{d_i | n} (μ_r ∗ f)(d) / [d_1, ..., d_r] · N(d_1, ..., d_r).
///
/// There is no coprimality constraint on a here, unlike the restricted
/// sums elsewhere in this module.
pub fn menon_f(
    n: u64,
    f: &MultiFn,
    polys: &[IntPolynomial],
    guard: &Guard,
) -> Result<IdentityReport> {
    if n == 0 {
        return Err(Error::ZeroArgument("menon_f"));
    }
    if polys.is_empty() {
        return Err(Error::EmptyArguments("menon_f"));
    }
    let r = polys.len();
    if f.arity() != r {
        return Err(Error::ArityMismatch {
            name: f.name().to_string(),
            expected: r,
            got: f.arity(),
        });
    }
    guard.admit([n])?;
    let started = Instant::now();

    let reduced: Vec<Vec<u64>> = polys
        .iter()
        .map(|p| p.reduced_coeffs(n))
        .collect::<Result<_>>()?;
    let mut lhs: i128 = 0;
    let mut buf = vec![0u64; r];
    for a in 1..=n {
        for (i, coeffs) in reduced.iter().enumerate() {
            buf[i] = gcd(crate::poly::horner_mod(coeffs, a % n, n), n);
        }
        lhs = lhs
            .checked_add(f.eval(&buf)?)
            .ok_or(Error::Overflow("menon_f"))?;
    }

    let transform = MobiusTransform::new(f.clone());
    let divs = divisors(n)?;
    let dims = vec![divs.len(); r];
    let mut idx = vec![0usize; r];
    let mut d_buf = vec![0u64; r];
    let mut total = ExactRational::zero();
    loop {
        for i in 0..r {
            d_buf[i] = divs[idx[i]];
        }
        let w = transform.eval(&d_buf)?;
        if w != 0 {
            let joint = count_simultaneous(polys, &d_buf)?;
            if joint != 0 {
                let l = lcm_many(&d_buf)?;
                total += ExactRational::from_int(w) * ExactRational::from(joint)
                    / ExactRational::from(l);
            }
        }
        if !advance_indices(&mut idx, &dims) {
            break;
        }
    }
    let rhs = (ExactRational::from(n) * total).to_integer()?;

    let mut params = std::collections::BTreeMap::new();
    params.insert("n".to_string(), n.to_string());
    params.insert("f".to_string(), f.name().to_string());
    params.insert(
        "polys".to_string(),
        polys
            .iter()
            .map(|p| p.coefficient_string())
            .collect::<Vec<_>>()
            .join(";"),
    );
    Ok(IdentityReport::new(
        "menon_f",
        params,
        BigInt::from(lhs),
        rhs,
        started.elapsed(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_point_case() {
        // n = 1: both sides are f(1, ..., 1).
        let f = MultiFn::random_table(3, 4, 2).unwrap();
        let expected = f.eval(&[1, 1]).unwrap();
        let r = menon_f(
            1,
            &f,
            &[IntPolynomial::x_minus_one(), IntPolynomial::identity()],
            &Guard::default(),
        )
        .unwrap();
        assert!(r.equal);
        assert_eq!(r.lhs, BigInt::from(expected));
    }

    #[test]
    fn product_weight_case() {
        // n = 3, f(x, y) = x y, polys (x - 1, x): terms 3*1, 1*1, 1*3.
        let f = MultiFn::product_of_powers(&[1, 1]).unwrap();
        let r = menon_f(
            3,
            &f,
            &[IntPolynomial::x_minus_one(), IntPolynomial::identity()],
            &Guard::default(),
        )
        .unwrap();
        assert!(r.equal);
        assert_eq!(r.lhs, BigInt::from(7));
    }

    #[test]
    fn unrestricted_sum_is_gcd_sum() {
        // r = 1, f = id, P = x - 1: no coprimality filter, so the value is
        // the full gcd-sum shifted by one, G(12) = 40.
        let f = MultiFn::product_of_powers(&[1]).unwrap();
        let r = menon_f(12, &f, &[IntPolynomial::x_minus_one()], &Guard::default()).unwrap();
        assert!(r.equal);
        assert_eq!(r.lhs, BigInt::from(40));
    }
}
