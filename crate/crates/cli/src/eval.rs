//! Single-function evaluation for the `eval` subcommand.

use menonkit_core::arith::{divisors, euler_phi, gcd_many, lcm_many, mobius, tau};
use menonkit_core::congruence::{
    coprime_progression_count, count_power_congruence, count_roots, count_roots_coprime,
};
use menonkit_core::error::Error;
use menonkit_core::identities::{beta, h_prime_power};
use menonkit_core::poly::IntPolynomial;
use menonkit_core::rational::ExactRational;
use menonkit_core::Result;

fn expect_args(function: &str, args: &[String], count: usize) -> Result<()> {
    if args.len() != count {
        return Err(Error::InvalidParams(format!(
            "`{function}` takes {count} argument(s), got {}",
            args.len()
        )));
    }
    Ok(())
}

fn parse_u64(s: &str) -> Result<u64> {
    s.parse()
        .map_err(|_| Error::Parse(format!("expected a non-negative integer, got {s:?}")))
}

fn parse_i128(s: &str) -> Result<i128> {
    s.parse()
        .map_err(|_| Error::Parse(format!("expected an integer, got {s:?}")))
}

pub const EVAL_USAGE: &str = "functions:
  phi N              Euler totient
  tau N              divisor count
  mobius N           Moebius function
  divisors N         divisor list
  gcd A B [C...]     greatest common divisor
  lcm A B [C...]     least common multiple
  pillai N           gcd-sum value
  c_ell ELL N        solutions of x^ELL = 1 (mod N)
  n_p COEFFS N       roots of the polynomial mod N (COEFFS low-to-high, e.g. \"-1,0,1\")
  n_p_hat COEFFS N [S]  roots with (x, N, S) = 1 (S defaults to N)
  lemma_count D R S X   progression count via the closed form
  beta S D           density factor over primes of S away from D
  h_pp P E1,E2,...   lcm-identity prime-power value h(P^E1, ..., P^Ek)";

/// Evaluates one registry function; returns the line to print.
pub fn run_eval(function: &str, args: &[String]) -> Result<String> {
    match function {
        "phi" => {
            expect_args(function, args, 1)?;
            Ok(euler_phi(parse_u64(&args[0])?)?.to_string())
        }
        "tau" => {
            expect_args(function, args, 1)?;
            Ok(tau(parse_u64(&args[0])?)?.to_string())
        }
        "mobius" | "mu" => {
            expect_args(function, args, 1)?;
            Ok(mobius(parse_u64(&args[0])?)?.to_string())
        }
        "divisors" => {
            expect_args(function, args, 1)?;
            let divs = divisors(parse_u64(&args[0])?)?;
            Ok(divs
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(","))
        }
        "gcd" => {
            if args.is_empty() {
                return Err(Error::EmptyArguments("gcd"));
            }
            let values = args
                .iter()
                .map(|a| parse_u64(a))
                .collect::<Result<Vec<_>>>()?;
            Ok(gcd_many(&values)?.to_string())
        }
        "lcm" => {
            if args.is_empty() {
                return Err(Error::EmptyArguments("lcm"));
            }
            let values = args
                .iter()
                .map(|a| parse_u64(a))
                .collect::<Result<Vec<_>>>()?;
            Ok(lcm_many(&values)?.to_string())
        }
        "pillai" => {
            expect_args(function, args, 1)?;
            let n = parse_u64(&args[0])?;
            if n == 0 {
                return Err(Error::ZeroArgument("pillai"));
            }
            let mut sum = ExactRational::zero();
            for d in divisors(n)? {
                sum += ExactRational::from(euler_phi(d)?) / ExactRational::from(d);
            }
            Ok((ExactRational::from(n) * sum).to_integer()?.to_string())
        }
        "c_ell" => {
            expect_args(function, args, 2)?;
            let ell = parse_u64(&args[0])?;
            let ell = u32::try_from(ell)
                .map_err(|_| Error::InvalidParams(format!("exponent {ell} too large")))?;
            Ok(count_power_congruence(ell, parse_u64(&args[1])?)?.to_string())
        }
        "n_p" => {
            expect_args(function, args, 2)?;
            let poly = IntPolynomial::parse(&args[0])?;
            Ok(count_roots(&poly, parse_u64(&args[1])?)?.to_string())
        }
        "n_p_hat" => {
            if args.len() != 2 && args.len() != 3 {
                return Err(Error::InvalidParams("`n_p_hat` takes COEFFS N [S]".into()));
            }
            let poly = IntPolynomial::parse(&args[0])?;
            let n = parse_u64(&args[1])?;
            let s = if args.len() == 3 {
                parse_u64(&args[2])?
            } else {
                n
            };
            Ok(count_roots_coprime(&poly, n, s)?.to_string())
        }
        "lemma_count" => {
            expect_args(function, args, 4)?;
            let d = parse_u64(&args[0])?;
            let r = parse_u64(&args[1])?;
            let s = parse_u64(&args[2])?;
            let x = parse_i128(&args[3])?;
            Ok(coprime_progression_count(d, r, s, x)?.to_string())
        }
        "beta" => {
            expect_args(function, args, 2)?;
            Ok(beta(parse_u64(&args[0])?, parse_u64(&args[1])?)?.to_string())
        }
        "h_pp" => {
            expect_args(function, args, 2)?;
            let p = parse_u64(&args[0])?;
            let exps = args[1]
                .split(',')
                .map(|e| {
                    e.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad exponent {e:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(h_prime_power(p, &exps)?.to_string())
        }
        other => Err(Error::InvalidParams(format!(
            "unknown function {other:?}\n{EVAL_USAGE}"
        ))),
    }
}
