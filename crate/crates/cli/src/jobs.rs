//! Identity registry for verify/sweep: turns CLI flags into a fully
//! determined point list, then evaluates points to reports. Two runs with
//! the same flags enumerate byte-identical point lists.

use std::time::Instant;

use num::bigint::BigInt;

use menonkit_core::arith::divisors;
use menonkit_core::congruence::{coprime_progression_count, coprime_progression_count_bruteforce};
use menonkit_core::error::Error;
use menonkit_core::identities::{
    corollary_gk_hk_rhs, evaluate_s, gk_hk_params, lcm_menon_equal, lcm_menon_w, lkq,
    menon_classic, menon_f, pillai_gcd_sum, sivaramakrishnan, theorem_g_rhs, theorem_main_lhs,
    theorem_main_rhs, GParams, GkSpec, Guard, MainParams, SMultiplicativityConfig, SPoint,
};
use menonkit_core::multifn::{FnRegistryId, MultiFn};
use menonkit_core::poly::IntPolynomial;
use menonkit_core::report::{params_from, IdentityReport};
use menonkit_core::sampling::{random_tuples, GSampler, MainSampler};
use menonkit_core::Result;

use crate::ranges::RangeArg;

#[derive(clap::Args, Debug, Clone)]
pub struct ParamFlags {
    /// Primary range, e.g. "1..200" or a single value.
    #[arg(long)]
    pub n: Option<RangeArg>,

    /// Outer range for the three-parameter identity; m and n enumerate
    /// its divisors.
    #[arg(long)]
    pub t: Option<RangeArg>,

    /// Outer range for the progression lemma; d and s enumerate its
    /// divisors and x runs over [0, d).
    #[arg(long)]
    pub r: Option<RangeArg>,

    /// Number of restricted indices (a range is accepted).
    #[arg(long)]
    pub k: Option<RangeArg>,

    /// Number of free indices (a range is accepted).
    #[arg(long)]
    pub ell: Option<RangeArg>,

    /// Power exponents for gk_hk, comma separated (e.g. "2,2").
    #[arg(long)]
    pub q: Option<String>,

    /// Function id: gcd | lcm | sum | one | delta | zeta | pow:E,...
    /// | compose:G | table:PATH | rand:seed=S,box=B.
    #[arg(long)]
    pub f: Option<String>,

    /// Polynomials as semicolon-separated coefficient lists, low to high
    /// (e.g. "-1,1;0,1" is x-1 and x).
    #[arg(long, allow_hyphen_values = true)]
    pub polys: Option<String>,

    /// Sample count for the seeded identities.
    #[arg(long)]
    pub samples: Option<usize>,

    /// Coordinate bound for sampled moduli (s_multiplicativity).
    #[arg(long)]
    pub bound: Option<u64>,

    /// Range bound for sampled instances (theorem_main, theorem_g).
    #[arg(long)]
    pub max_range: Option<u64>,
}

fn require(range: Option<RangeArg>, flag: &str, identity: &str) -> Result<RangeArg> {
    range.ok_or_else(|| {
        Error::InvalidParams(format!("`{identity}` needs --{flag} (e.g. --{flag} 1..50)"))
    })
}

/// For flags that take one value, not a range.
fn single(range: Option<RangeArg>, default: u64, flag: &str, identity: &str) -> Result<u64> {
    match range {
        None => Ok(default),
        Some(r) => r.single().ok_or_else(|| {
            Error::InvalidParams(format!("`{identity}` takes a single --{flag} value"))
        }),
    }
}

fn parse_polys(spec: &str) -> Result<Vec<IntPolynomial>> {
    spec.split(';').map(IntPolynomial::parse).collect()
}

pub const IDENTITY_IDS: &[&str] = &[
    "menon",
    "sivaramakrishnan",
    "pillai",
    "lkq",
    "theorem_main",
    "theorem_g",
    "gk_hk",
    "menon_f",
    "lcm_w",
    "lcm_equal",
    "lemma",
    "s_multiplicativity",
];

/// A fully determined verification job: the point list is materialized at
/// construction, so report order is independent of evaluation order.
pub enum Job {
    Menon {
        ns: Vec<u64>,
    },
    Pillai {
        ns: Vec<u64>,
    },
    Siva {
        points: Vec<(u64, u64, u64)>,
    },
    Lkq {
        points: Vec<(u64, usize, u32)>,
    },
    Lemma {
        points: Vec<(u64, u64, u64, u64)>,
    },
    LcmEqual {
        points: Vec<(u64, usize)>,
    },
    LcmW {
        tuples: Vec<Vec<u64>>,
    },
    GkHk {
        ns: Vec<u64>,
        k: usize,
        ell: usize,
        exps: Vec<u32>,
    },
    MenonF {
        ns: Vec<u64>,
        f: MultiFn,
        polys: Vec<IntPolynomial>,
    },
    TheoremMain {
        params: Vec<MainParams>,
    },
    TheoremG {
        params: Vec<GParams>,
    },
    SMult {
        cfg: SMultiplicativityConfig,
        pairs: Vec<(SPoint, SPoint)>,
        f: MultiFn,
    },
}

pub fn build_job(identity: &str, flags: &ParamFlags, seed: u64) -> Result<Job> {
    match identity {
        "menon" => Ok(Job::Menon {
            ns: require(flags.n, "n", identity)?.iter().collect(),
        }),
        "pillai" => Ok(Job::Pillai {
            ns: require(flags.n, "n", identity)?.iter().collect(),
        }),
        "sivaramakrishnan" => {
            let mut points = Vec::new();
            for t in require(flags.t, "t", identity)?.iter() {
                let divs = divisors(t)?;
                for &m in &divs {
                    for &n in &divs {
                        points.push((m, n, t));
                    }
                }
            }
            Ok(Job::Siva { points })
        }
        "lkq" => {
            let ns = require(flags.n, "n", identity)?;
            let ks = flags.k.unwrap_or(RangeArg { lo: 1, hi: 1 });
            let ells = flags.ell.unwrap_or(RangeArg { lo: 1, hi: 1 });
            let mut points = Vec::new();
            for n in ns.iter() {
                for k in ks.iter() {
                    for ell in ells.iter() {
                        if ell == 0 {
                            return Err(Error::InvalidParams("lkq needs ell >= 1".into()));
                        }
                        points.push((n, k as usize, ell as u32));
                    }
                }
            }
            Ok(Job::Lkq { points })
        }
        "lemma" => {
            let mut points = Vec::new();
            for r in require(flags.r, "r", identity)?.iter() {
                let divs = divisors(r)?;
                for &d in &divs {
                    for &s in &divs {
                        for x in 0..d {
                            points.push((r, d, s, x));
                        }
                    }
                }
            }
            Ok(Job::Lemma { points })
        }
        "lcm_equal" => {
            let ns = require(flags.n, "n", identity)?;
            let ks = flags.k.unwrap_or(RangeArg { lo: 2, hi: 2 });
            let mut points = Vec::new();
            for n in ns.iter() {
                for k in ks.iter() {
                    if k == 0 {
                        return Err(Error::InvalidParams("lcm_equal needs k >= 1".into()));
                    }
                    points.push((n, k as usize));
                }
            }
            Ok(Job::LcmEqual { points })
        }
        "lcm_w" => {
            let ns = require(flags.n, "n", identity)?;
            let k = single(flags.k, 2, "k", identity)? as usize;
            if k == 0 {
                return Err(Error::InvalidParams("lcm_w needs k >= 1".into()));
            }
            let tuples = match flags.samples {
                Some(count) => random_tuples(seed, count, k, ns.hi),
                None => {
                    // Exhaustive grid over the range, lexicographic.
                    let coords: Vec<u64> = ns.iter().collect();
                    let mut tuples = vec![vec![]];
                    for _ in 0..k {
                        let mut next = Vec::with_capacity(tuples.len() * coords.len());
                        for prefix in &tuples {
                            for &c in &coords {
                                let mut t: Vec<u64> = prefix.clone();
                                t.push(c);
                                next.push(t);
                            }
                        }
                        tuples = next;
                    }
                    tuples
                }
            };
            Ok(Job::LcmW { tuples })
        }
        "gk_hk" => {
            let ns = require(flags.n, "n", identity)?;
            let exps: Vec<u32> = match &flags.q {
                Some(q) => q
                    .split(',')
                    .map(|e| {
                        e.trim()
                            .parse::<u32>()
                            .map_err(|_| Error::Parse(format!("bad exponent {e:?}")))
                    })
                    .collect::<Result<_>>()?,
                None => vec![1; single(flags.k, 1, "k", identity)? as usize],
            };
            let k = single(flags.k, exps.len() as u64, "k", identity)? as usize;
            if k != exps.len() || k == 0 {
                return Err(Error::InvalidParams(format!(
                    "gk_hk needs k >= 1 exponents in --q, got k={k} and {} exponents",
                    exps.len()
                )));
            }
            let ell = single(flags.ell, 0, "ell", identity)? as usize;
            Ok(Job::GkHk {
                ns: ns.iter().collect(),
                k,
                ell,
                exps,
            })
        }
        "menon_f" => {
            let ns = require(flags.n, "n", identity)?;
            let polys = parse_polys(flags.polys.as_deref().unwrap_or("-1,1"))?;
            let f_id = FnRegistryId::parse(flags.f.as_deref().unwrap_or("gcd"))?;
            let f = f_id.resolve(polys.len())?;
            Ok(Job::MenonF {
                ns: ns.iter().collect(),
                f,
                polys,
            })
        }
        "theorem_main" => {
            let samples = flags.samples.unwrap_or(200);
            let max_range = flags.max_range.unwrap_or(30);
            let mut sampler = MainSampler::new(seed, max_range, 3);
            let params = (0..samples)
                .map(|_| sampler.next_params())
                .collect::<Result<Vec<_>>>()?;
            Ok(Job::TheoremMain { params })
        }
        "theorem_g" => {
            let samples = flags.samples.unwrap_or(100);
            let max_range = flags.max_range.unwrap_or(30);
            let mut sampler = GSampler::new(seed, 10, max_range, 3);
            let params = (0..samples)
                .map(|_| sampler.next_params())
                .collect::<Result<Vec<_>>>()?;
            Ok(Job::TheoremG { params })
        }
        "s_multiplicativity" => {
            let k = single(flags.k, 1, "k", identity)? as usize;
            let ell = single(flags.ell, 1, "ell", identity)? as usize;
            if k + ell == 0 {
                return Err(Error::InvalidParams(
                    "s_multiplicativity needs k + ell >= 1".into(),
                ));
            }
            let restricted_polys = match &flags.polys {
                Some(p) => {
                    let polys = parse_polys(p)?;
                    if polys.len() != k {
                        return Err(Error::InvalidParams(format!(
                            "expected {k} polynomials in --polys, got {}",
                            polys.len()
                        )));
                    }
                    polys
                }
                None => (0..k).map(|_| IntPolynomial::x_minus_one()).collect(),
            };
            let free_polys = (0..ell).map(|_| IntPolynomial::identity()).collect();
            let cfg = SMultiplicativityConfig {
                restricted_polys,
                free_polys,
                f: FnRegistryId::parse(flags.f.as_deref().unwrap_or("gcd"))?,
                samples: flags.samples.unwrap_or(100),
                seed,
                coordinate_bound: flags.bound.unwrap_or(10),
            };
            let f = cfg.f.resolve(cfg.arity())?;
            let pairs = cfg.sample_pairs();
            Ok(Job::SMult { cfg, pairs, f })
        }
        other => Err(Error::InvalidParams(format!(
            "unknown identity {other:?}; known: {}",
            IDENTITY_IDS.join(", ")
        ))),
    }
}

impl Job {
    pub fn len(&self) -> usize {
        match self {
            Job::Menon { ns } | Job::Pillai { ns } => ns.len(),
            Job::Siva { points } => points.len(),
            Job::Lkq { points } => points.len(),
            Job::Lemma { points } => points.len(),
            Job::LcmEqual { points } => points.len(),
            Job::LcmW { tuples } => tuples.len(),
            Job::GkHk { ns, .. } => ns.len(),
            Job::MenonF { ns, .. } => ns.len(),
            Job::TheoremMain { params } => params.len(),
            Job::TheoremG { params } => params.len(),
            Job::SMult { pairs, .. } => pairs.len(),
        }
    }

    pub fn eval(&self, idx: usize, guard: &Guard) -> Result<IdentityReport> {
        match self {
            Job::Menon { ns } => menon_classic(ns[idx]),
            Job::Pillai { ns } => pillai_gcd_sum(ns[idx]),
            Job::Siva { points } => {
                let (m, n, t) = points[idx];
                sivaramakrishnan(m, n, t)
            }
            Job::Lkq { points } => {
                let (n, k, ell) = points[idx];
                lkq(n, k, ell, guard)
            }
            Job::Lemma { points } => {
                let (r, d, s, x) = points[idx];
                let started = Instant::now();
                let brute = coprime_progression_count_bruteforce(d, r, s, x as i128)?;
                let closed = coprime_progression_count(d, r, s, x as i128)?;
                Ok(IdentityReport::new(
                    "lemma",
                    params_from([("r", r), ("d", d), ("s", s), ("x", x)]),
                    BigInt::from(brute),
                    BigInt::from(closed),
                    started.elapsed(),
                ))
            }
            Job::LcmEqual { points } => {
                let (n, k) = points[idx];
                lcm_menon_equal(n, k, guard)
            }
            Job::LcmW { tuples } => lcm_menon_w(&tuples[idx], guard),
            Job::GkHk { ns, k, ell, exps } => {
                let n = ns[idx];
                let started = Instant::now();
                let spec = GkSpec::PowerExponents(exps.clone());
                let gp = gk_hk_params(n, *k, *ell, &spec)?;
                let lhs = theorem_main_lhs(&gp.to_main_params()?, guard)?;
                let rhs = corollary_gk_hk_rhs(n, *k, *ell, &spec)?;
                let mut params = params_from([("n", n)]);
                params.insert("k".into(), k.to_string());
                params.insert("ell".into(), ell.to_string());
                params.insert(
                    "q".into(),
                    exps.iter()
                        .map(|e| e.to_string())
                        .collect::<Vec<_>>()
                        .join(","),
                );
                Ok(IdentityReport::new(
                    "gk_hk",
                    params,
                    BigInt::from(lhs),
                    rhs,
                    started.elapsed(),
                ))
            }
            Job::MenonF { ns, f, polys } => menon_f(ns[idx], f, polys, guard),
            Job::TheoremMain { params } => {
                let p = &params[idx];
                let started = Instant::now();
                let lhs = theorem_main_lhs(p, guard)?;
                let rhs = theorem_main_rhs(p)?;
                let mut map = p.describe();
                map.insert("sample".into(), idx.to_string());
                Ok(IdentityReport::new(
                    "theorem_main",
                    map,
                    BigInt::from(lhs),
                    rhs,
                    started.elapsed(),
                ))
            }
            Job::TheoremG { params } => {
                let p = &params[idx];
                let started = Instant::now();
                let lhs = theorem_main_lhs(&p.to_main_params()?, guard)?;
                let rhs = theorem_g_rhs(p)?;
                let mut map = p.describe();
                map.insert("sample".into(), idx.to_string());
                Ok(IdentityReport::new(
                    "theorem_g",
                    map,
                    BigInt::from(lhs),
                    rhs,
                    started.elapsed(),
                ))
            }
            Job::SMult { cfg, pairs, f } => {
                let (left, right) = &pairs[idx];
                let started = Instant::now();
                let combined = evaluate_s(
                    &left.combined(right)?,
                    &cfg.restricted_polys,
                    &cfg.free_polys,
                    f,
                )?;
                let split = evaluate_s(left, &cfg.restricted_polys, &cfg.free_polys, f)?
                    * evaluate_s(right, &cfg.restricted_polys, &cfg.free_polys, f)?;
                let mut params = params_from([("sample", idx)]);
                params.insert("left".into(), left.describe());
                params.insert("right".into(), right.describe());
                params.insert("f".into(), f.name().to_string());
                Ok(IdentityReport::new(
                    "s_multiplicativity",
                    params,
                    combined,
                    split,
                    started.elapsed(),
                ))
            }
        }
    }
}
