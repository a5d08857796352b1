//! Arithmetic functions of several variables: construction, Dirichlet
//! convolution, the k-variable Möbius transform, principal functions and
//! a brute-force multiplicativity checker.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{divisors, euler_phi, gcd_many, lcm_many, mobius, tau};
use crate::error::{Error, Result};
use crate::grid::advance_indices;

/// One-variable functions available for composition and for the single
/// variable identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OneVarFn {
    Id,
    Phi,
    Tau,
    Mobius,
    One,
}

impl OneVarFn {
    pub fn name(self) -> &'static str {
        match self {
            OneVarFn::Id => "id",
            OneVarFn::Phi => "phi",
            OneVarFn::Tau => "tau",
            OneVarFn::Mobius => "mu",
            OneVarFn::One => "one",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "id" => Ok(OneVarFn::Id),
            "phi" => Ok(OneVarFn::Phi),
            "tau" => Ok(OneVarFn::Tau),
            "mu" | "mobius" => Ok(OneVarFn::Mobius),
            "one" => Ok(OneVarFn::One),
            other => Err(Error::Parse(format!(
                "unknown one-variable function {other:?}"
            ))),
        }
    }

    pub fn eval(self, n: u64) -> Result<i128> {
        if n == 0 {
            return Err(Error::ZeroArgument("OneVarFn::eval"));
        }
        Ok(match self {
            OneVarFn::Id => n as i128,
            OneVarFn::Phi => euler_phi(n)? as i128,
            OneVarFn::Tau => tau(n)? as i128,
            OneVarFn::Mobius => mobius(n)? as i128,
            OneVarFn::One => 1,
        })
    }
}

type EvalClosure = dyn Fn(&[u64]) -> Result<i128> + Send + Sync;

/// An integer-valued arithmetic function of k variables.
///
/// The evaluator is total on positive tuples (table-backed functions are
/// total on their declared box and reject anything outside it). The
/// `multiplicative_hint` is an assertion carried for reporting, never an
/// assumption; `Some(true)` is checked against f(1,...,1) = 1 at
/// construction.
#[derive(Clone)]
pub struct MultiFn {
    name: String,
    arity: usize,
    multiplicative_hint: Option<bool>,
    eval: Arc<EvalClosure>,
}

impl std::fmt::Debug for MultiFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MultiFn")
            .field("name", &self.name)
            .field("arity", &self.arity)
            .field("multiplicative_hint", &self.multiplicative_hint)
            .finish()
    }
}

impl MultiFn {
    pub fn new(
        name: impl Into<String>,
        arity: usize,
        multiplicative_hint: Option<bool>,
        eval: impl Fn(&[u64]) -> Result<i128> + Send + Sync + 'static,
    ) -> Result<Self> {
        if arity == 0 {
            return Err(Error::InvalidParams(
                "MultiFn arity must be positive".into(),
            ));
        }
        let f = MultiFn {
            name: name.into(),
            arity,
            multiplicative_hint,
            eval: Arc::new(eval),
        };
        if multiplicative_hint == Some(true) {
            let ones = vec![1u64; arity];
            let v = f.eval(&ones)?;
            if v != 1 {
                return Err(Error::InvalidParams(format!(
                    "`{}` hinted multiplicative but f(1,...,1) = {v}",
                    f.name
                )));
            }
        }
        Ok(f)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn multiplicative_hint(&self) -> Option<bool> {
        self.multiplicative_hint
    }

    pub fn eval(&self, tuple: &[u64]) -> Result<i128> {
        if tuple.len() != self.arity {
            return Err(Error::ArityMismatch {
                name: self.name.clone(),
                expected: self.arity,
                got: tuple.len(),
            });
        }
        if tuple.contains(&0) {
            return Err(Error::ZeroArgument("MultiFn::eval"));
        }
        (self.eval)(tuple)
    }

    /// All-ones function ζ_k.
    pub fn zeta(arity: usize) -> Result<Self> {
        Self::new("zeta", arity, Some(true), |_| Ok(1))
    }

    /// Same function as [`MultiFn::zeta`] under its registry alias.
    pub fn constant_one(arity: usize) -> Result<Self> {
        Self::new("one", arity, Some(true), |_| Ok(1))
    }

    /// Convolution identity δ_k: 1 at (1,...,1), else 0.
    pub fn delta(arity: usize) -> Result<Self> {
        Self::new("delta", arity, Some(true), |t| {
            Ok(if t.iter().all(|&v| v == 1) { 1 } else { 0 })
        })
    }

    pub fn gcd_of_args(arity: usize) -> Result<Self> {
        Self::new("gcd", arity, Some(true), |t| Ok(gcd_many(t)? as i128))
    }

    pub fn lcm_of_args(arity: usize) -> Result<Self> {
        Self::new("lcm", arity, Some(true), |t| Ok(lcm_many(t)? as i128))
    }

    pub fn sum_of_args(arity: usize) -> Result<Self> {
        Self::new("sum", arity, Some(false), |t| {
            let mut acc: i128 = 0;
            for &v in t {
                acc = acc
                    .checked_add(v as i128)
                    .ok_or(Error::Overflow("sum_of_args"))?;
            }
            Ok(acc)
        })
    }

    /// ∏ n_i^{e_i} with one exponent per coordinate. pow:1 is id,
    /// pow:k,...,k on the diagonal is id_k.
    pub fn product_of_powers(exponents: &[u32]) -> Result<Self> {
        if exponents.is_empty() {
            return Err(Error::EmptyArguments("product_of_powers"));
        }
        let exps = exponents.to_vec();
        let name = format!(
            "pow:{}",
            exps.iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join(",")
        );
        Self::new(name, exponents.len(), Some(true), move |t| {
            let mut acc: i128 = 1;
            for (&v, &e) in t.iter().zip(&exps) {
                let p = (v as i128)
                    .checked_pow(e)
                    .ok_or(Error::Overflow("product_of_powers"))?;
                acc = acc
                    .checked_mul(p)
                    .ok_or(Error::Overflow("product_of_powers"))?;
            }
            Ok(acc)
        })
    }

    /// μ_k as a function value (product of one-variable μ).
    pub fn mobius_fn(arity: usize) -> Result<Self> {
        Self::new("mu", arity, Some(true), |t| Ok(mobius_k(t)? as i128))
    }

    /// g composed with the gcd of all arguments.
    pub fn compose_gcd(g: OneVarFn, arity: usize) -> Result<Self> {
        let name = format!("compose:{}", g.name());
        Self::new(name, arity, Some(true), move |t| g.eval(gcd_many(t)?))
    }

    /// The pointwise Dirichlet convolution f ∗_k g as a new function.
    pub fn convolution(f: &MultiFn, g: &MultiFn) -> Result<Self> {
        if f.arity != g.arity {
            return Err(Error::ArityMismatch {
                name: format!("{}*{}", f.name, g.name),
                expected: f.arity,
                got: g.arity,
            });
        }
        let name = format!("({}*{})", f.name, g.name);
        let hint = match (f.multiplicative_hint, g.multiplicative_hint) {
            // Convolution preserves multiplicativity.
            (Some(true), Some(true)) => Some(true),
            _ => None,
        };
        let fc = f.clone();
        let gc = g.clone();
        Self::new(name, f.arity, hint, move |t| {
            dirichlet_convolve_point(&fc, &gc, t)
        })
    }

    /// Loads a table-backed function from the plain text format: one entry
    /// per line, k coordinates then the value, '#' starts a comment.
    /// The file must cover a full box [1, B]^k; duplicates are an error.
    pub fn from_table_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_table_text(&text, &path.display().to_string())
    }

    pub fn from_table_text(text: &str, source: &str) -> Result<Self> {
        let mut entries: HashMap<Vec<u64>, i128> = HashMap::new();
        let mut arity: Option<usize> = None;
        let mut box_bound: u64 = 0;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() < 2 {
                return Err(Error::Table(format!(
                    "{source}:{}: expected coordinates and a value",
                    lineno + 1
                )));
            }
            let k = tokens.len() - 1;
            match arity {
                None => arity = Some(k),
                Some(a) if a != k => {
                    return Err(Error::Table(format!(
                        "{source}:{}: arity {k} does not match earlier arity {a}",
                        lineno + 1
                    )))
                }
                _ => {}
            }
            let mut tuple = Vec::with_capacity(k);
            for tok in &tokens[..k] {
                let v: u64 = tok.parse().map_err(|_| {
                    Error::Table(format!("{source}:{}: bad coordinate {tok:?}", lineno + 1))
                })?;
                if v == 0 {
                    return Err(Error::Table(format!(
                        "{source}:{}: coordinates must be positive",
                        lineno + 1
                    )));
                }
                box_bound = box_bound.max(v);
                tuple.push(v);
            }
            let value: i128 = tokens[k].parse().map_err(|_| {
                Error::Table(format!(
                    "{source}:{}: bad value {:?}",
                    lineno + 1,
                    tokens[k]
                ))
            })?;
            if entries.insert(tuple, value).is_some() {
                return Err(Error::Table(format!(
                    "{source}:{}: duplicate tuple",
                    lineno + 1
                )));
            }
        }
        let arity = arity.ok_or_else(|| Error::Table(format!("{source}: empty table")))?;
        let expected = (box_bound as u128).pow(arity as u32);
        if entries.len() as u128 != expected {
            return Err(Error::Table(format!(
                "{source}: table must cover the full box [1,{box_bound}]^{arity} \
                 ({expected} entries), found {}",
                entries.len()
            )));
        }
        let name = format!("table:{source}");
        let err_name = name.clone();
        Self::new(name, arity, None, move |t| {
            entries.get(t).copied().ok_or_else(|| {
                Error::Table(format!(
                    "{err_name}: tuple {t:?} outside the declared box [1,{box_bound}]"
                ))
            })
        })
    }

    /// Seeded pseudo-random table over [1, box_bound]^arity with values in
    /// [-9, 9]. Deterministic in (seed, box_bound, arity); used to exercise
    /// the general identities with non-multiplicative f.
    pub fn random_table(seed: u64, box_bound: u64, arity: usize) -> Result<Self> {
        if arity == 0 {
            return Err(Error::InvalidParams(
                "random_table arity must be positive".into(),
            ));
        }
        if box_bound == 0 {
            return Err(Error::ZeroArgument("random_table"));
        }
        let cells = (box_bound as u128)
            .checked_pow(arity as u32)
            .ok_or(Error::Overflow("random_table size"))?;
        if cells > 20_000_000 {
            return Err(Error::InvalidParams(format!(
                "random_table box {box_bound}^{arity} = {cells} cells is too large"
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let values: Vec<i128> = (0..cells as usize)
            .map(|_| rng.gen_range(-9i32..=9) as i128)
            .collect();
        let name = format!("rand:seed={seed},box={box_bound}");
        let err_name = name.clone();
        Self::new(name, arity, Some(false), move |t| {
            // Cell order matches tuple iteration with the first coordinate
            // varying fastest.
            let mut idx: u128 = 0;
            let mut stride: u128 = 1;
            for &v in t {
                if v > box_bound {
                    return Err(Error::Table(format!(
                        "{err_name}: tuple {t:?} outside the declared box [1,{box_bound}]"
                    )));
                }
                idx += (v as u128 - 1) * stride;
                stride *= box_bound as u128;
            }
            Ok(values[idx as usize])
        })
    }
}

/// μ_k(n_1, ..., n_k) = μ(n_1) ⋯ μ(n_k).
pub fn mobius_k(tuple: &[u64]) -> Result<i64> {
    let mut acc: i64 = 1;
    for &v in tuple {
        let m = mobius(v)?;
        if m == 0 {
            return Ok(0);
        }
        acc *= m;
    }
    Ok(acc)
}

/// (f ∗_k g)(tuple): sum of f(d) g(tuple/d) over all divisor tuples.
pub fn dirichlet_convolve_point(f: &MultiFn, g: &MultiFn, tuple: &[u64]) -> Result<i128> {
    if f.arity() != g.arity() {
        return Err(Error::ArityMismatch {
            name: format!("{}*{}", f.name(), g.name()),
            expected: f.arity(),
            got: g.arity(),
        });
    }
    if tuple.len() != f.arity() {
        return Err(Error::ArityMismatch {
            name: format!("{}*{}", f.name(), g.name()),
            expected: f.arity(),
            got: tuple.len(),
        });
    }
    let divisor_lists: Vec<Vec<u64>> = tuple.iter().map(|&n| divisors(n)).collect::<Result<_>>()?;
    let dims: Vec<usize> = divisor_lists.iter().map(|d| d.len()).collect();
    let k = tuple.len();
    let mut idx = vec![0usize; k];
    let mut d_buf = vec![0u64; k];
    let mut q_buf = vec![0u64; k];
    let mut acc: i128 = 0;
    loop {
        for i in 0..k {
            d_buf[i] = divisor_lists[i][idx[i]];
            q_buf[i] = tuple[i] / d_buf[i];
        }
        let term = f
            .eval(&d_buf)?
            .checked_mul(g.eval(&q_buf)?)
            .ok_or(Error::Overflow("dirichlet_convolve_point"))?;
        acc = acc
            .checked_add(term)
            .ok_or(Error::Overflow("dirichlet_convolve_point"))?;
        if !advance_indices(&mut idx, &dims) {
            break;
        }
    }
    Ok(acc)
}

/// (μ_k ∗_k f)(tuple), the Möbius transform of f at one point.
pub fn mobius_transform_point(f: &MultiFn, tuple: &[u64]) -> Result<i128> {
    if tuple.len() != f.arity() {
        return Err(Error::ArityMismatch {
            name: f.name().to_string(),
            expected: f.arity(),
            got: tuple.len(),
        });
    }
    let divisor_lists: Vec<Vec<u64>> = tuple.iter().map(|&n| divisors(n)).collect::<Result<_>>()?;
    let dims: Vec<usize> = divisor_lists.iter().map(|d| d.len()).collect();
    let k = tuple.len();
    let mut idx = vec![0usize; k];
    let mut q_buf = vec![0u64; k];
    let mut acc: i128 = 0;
    loop {
        let mut mu: i64 = 1;
        for i in 0..k {
            let d = divisor_lists[i][idx[i]];
            let m = mobius(d)?;
            if m == 0 {
                mu = 0;
                break;
            }
            mu *= m;
            q_buf[i] = tuple[i] / d;
        }
        if mu != 0 {
            let term = (mu as i128)
                .checked_mul(f.eval(&q_buf)?)
                .ok_or(Error::Overflow("mobius_transform_point"))?;
            acc = acc
                .checked_add(term)
                .ok_or(Error::Overflow("mobius_transform_point"))?;
        }
        if !advance_indices(&mut idx, &dims) {
            break;
        }
    }
    Ok(acc)
}

/// Memoizing wrapper around [`mobius_transform_point`] for a fixed f.
/// The cache is keyed by tuple and is behaviorally invisible.
pub struct MobiusTransform {
    f: MultiFn,
    cache: Mutex<HashMap<Vec<u64>, i128>>,
}

impl MobiusTransform {
    pub fn new(f: MultiFn) -> Self {
        MobiusTransform {
            f,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn eval(&self, tuple: &[u64]) -> Result<i128> {
        if let Some(&v) = self.cache.lock().unwrap().get(tuple) {
            return Ok(v);
        }
        let v = mobius_transform_point(&self.f, tuple)?;
        self.cache.lock().unwrap().insert(tuple.to_vec(), v);
        Ok(v)
    }
}

/// Pr_k(g): g(n) on the diagonal (n, ..., n), zero elsewhere.
pub fn principal_point<G>(g: G, k: usize, tuple: &[u64]) -> Result<i128>
where
    G: Fn(u64) -> Result<i128>,
{
    if tuple.len() != k {
        return Err(Error::ArityMismatch {
            name: "principal".into(),
            expected: k,
            got: tuple.len(),
        });
    }
    if tuple.is_empty() {
        return Err(Error::EmptyArguments("principal_point"));
    }
    let n = tuple[0];
    if tuple.iter().any(|&v| v != n) {
        return Ok(0);
    }
    g(n)
}

/// Result of a box-bounded multiplicativity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MultiplicativityOutcome {
    Pass,
    /// f(1, ..., 1) differs from 1.
    NotUnital {
        value: i128,
    },
    /// First pair (in scan order) with coprime coordinate products where
    /// f(a.b) != f(a) f(b).
    Counterexample {
        a: Vec<u64>,
        b: Vec<u64>,
        combined: i128,
        split: i128,
    },
}

impl MultiplicativityOutcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, MultiplicativityOutcome::Pass)
    }
}

/// Checks f(1,...,1) = 1 and f(a.b) = f(a) f(b) for every pair of tuples
/// in [1, box_bound]^k whose coordinate products are coprime.
///
/// Pairs are scanned with the first coordinate varying fastest and the
/// first violating pair is reported. The all-ones tuple is excluded from
/// the pair scan (it only restates the unital condition, which is checked
/// separately).
pub fn check_multiplicative(f: &MultiFn, box_bound: u64) -> Result<MultiplicativityOutcome> {
    if box_bound == 0 {
        return Err(Error::ZeroArgument("check_multiplicative"));
    }
    let k = f.arity();
    let dims = vec![box_bound as usize; k];
    let mut memo: HashMap<Vec<u64>, i128> = HashMap::new();
    let mut eval_memo = |f: &MultiFn, t: &[u64]| -> Result<i128> {
        if let Some(&v) = memo.get(t) {
            return Ok(v);
        }
        let v = f.eval(t)?;
        memo.insert(t.to_vec(), v);
        Ok(v)
    };

    let mut a_idx = vec![0usize; k];
    let mut a = vec![0u64; k];
    let mut b = vec![0u64; k];
    let mut ab = vec![0u64; k];
    loop {
        for i in 0..k {
            a[i] = a_idx[i] as u64 + 1;
        }
        if a.iter().any(|&v| v != 1) {
            let prod_a = a.iter().map(|&v| v as u128).product::<u128>();
            let mut b_idx = vec![0usize; k];
            loop {
                for i in 0..k {
                    b[i] = b_idx[i] as u64 + 1;
                }
                if b.iter().any(|&v| v != 1) {
                    let prod_b = b.iter().map(|&v| v as u128).product::<u128>();
                    if gcd_u128(prod_a, prod_b) == 1 {
                        for i in 0..k {
                            ab[i] = a[i]
                                .checked_mul(b[i])
                                .ok_or(Error::Overflow("check_multiplicative"))?;
                        }
                        let combined = eval_memo(f, &ab)?;
                        let fa = eval_memo(f, &a)?;
                        let fb = eval_memo(f, &b)?;
                        let split = fa
                            .checked_mul(fb)
                            .ok_or(Error::Overflow("check_multiplicative"))?;
                        if combined != split {
                            return Ok(MultiplicativityOutcome::Counterexample {
                                a: a.clone(),
                                b: b.clone(),
                                combined,
                                split,
                            });
                        }
                    }
                }
                if !advance_indices(&mut b_idx, &dims) {
                    break;
                }
            }
        }
        if !advance_indices(&mut a_idx, &dims) {
            break;
        }
    }
    let ones = vec![1u64; k];
    let at_one = f.eval(&ones)?;
    if at_one != 1 {
        return Ok(MultiplicativityOutcome::NotUnital { value: at_one });
    }
    Ok(MultiplicativityOutcome::Pass)
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

/// CLI-facing naming for the function registry.
///
/// Every id resolves to exactly one [`MultiFn`] of the requested arity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FnRegistryId {
    GcdOfArgs,
    LcmOfArgs,
    ProductOfPowers(Vec<u32>),
    SumOfArgs,
    ConstantOne,
    Delta,
    Zeta,
    ComposeSingle(OneVarFn),
    Table(PathBuf),
    RandomTable { seed: u64, box_bound: u64 },
}

impl FnRegistryId {
    /// Grammar: gcd | lcm | sum | one | delta | zeta | pow:E,E,... |
    /// compose:G | table:PATH | rand:seed=S,box=B
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "gcd" => return Ok(FnRegistryId::GcdOfArgs),
            "lcm" => return Ok(FnRegistryId::LcmOfArgs),
            "sum" => return Ok(FnRegistryId::SumOfArgs),
            "one" => return Ok(FnRegistryId::ConstantOne),
            "delta" => return Ok(FnRegistryId::Delta),
            "zeta" => return Ok(FnRegistryId::Zeta),
            _ => {}
        }
        let (tag, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("unknown function id {s:?}")))?;
        match tag {
            "pow" => {
                let exps = rest
                    .split(',')
                    .map(|e| {
                        e.trim()
                            .parse::<u32>()
                            .map_err(|_| Error::Parse(format!("bad exponent {e:?} in {s:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(FnRegistryId::ProductOfPowers(exps))
            }
            "compose" => Ok(FnRegistryId::ComposeSingle(OneVarFn::parse(rest)?)),
            "table" => Ok(FnRegistryId::Table(PathBuf::from(rest))),
            "rand" => {
                let mut seed: Option<u64> = None;
                let mut box_bound: Option<u64> = None;
                for kv in rest.split(',') {
                    let (key, value) = kv
                        .split_once('=')
                        .ok_or_else(|| Error::Parse(format!("bad rand parameter {kv:?}")))?;
                    let parsed: u64 = value
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad rand parameter {kv:?}")))?;
                    match key.trim() {
                        "seed" => seed = Some(parsed),
                        "box" => box_bound = Some(parsed),
                        _ => return Err(Error::Parse(format!("bad rand parameter {kv:?}"))),
                    }
                }
                match (seed, box_bound) {
                    (Some(seed), Some(box_bound)) => {
                        Ok(FnRegistryId::RandomTable { seed, box_bound })
                    }
                    _ => Err(Error::Parse(format!(
                        "rand needs both seed= and box=: {s:?}"
                    ))),
                }
            }
            _ => Err(Error::Parse(format!("unknown function id {s:?}"))),
        }
    }

    pub fn resolve(&self, arity: usize) -> Result<MultiFn> {
        match self {
            FnRegistryId::GcdOfArgs => MultiFn::gcd_of_args(arity),
            FnRegistryId::LcmOfArgs => MultiFn::lcm_of_args(arity),
            FnRegistryId::ProductOfPowers(exps) => {
                if exps.len() != arity {
                    return Err(Error::ArityMismatch {
                        name: self.to_string(),
                        expected: arity,
                        got: exps.len(),
                    });
                }
                MultiFn::product_of_powers(exps)
            }
            FnRegistryId::SumOfArgs => MultiFn::sum_of_args(arity),
            FnRegistryId::ConstantOne => MultiFn::constant_one(arity),
            FnRegistryId::Delta => MultiFn::delta(arity),
            FnRegistryId::Zeta => MultiFn::zeta(arity),
            FnRegistryId::ComposeSingle(g) => MultiFn::compose_gcd(*g, arity),
            FnRegistryId::Table(path) => {
                let f = MultiFn::from_table_file(path)?;
                if f.arity() != arity {
                    return Err(Error::ArityMismatch {
                        name: f.name().to_string(),
                        expected: arity,
                        got: f.arity(),
                    });
                }
                Ok(f)
            }
            FnRegistryId::RandomTable { seed, box_bound } => {
                MultiFn::random_table(*seed, *box_bound, arity)
            }
        }
    }
}

impl std::fmt::Display for FnRegistryId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FnRegistryId::GcdOfArgs => write!(f, "gcd"),
            FnRegistryId::LcmOfArgs => write!(f, "lcm"),
            FnRegistryId::ProductOfPowers(exps) => write!(
                f,
                "pow:{}",
                exps.iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            ),
            FnRegistryId::SumOfArgs => write!(f, "sum"),
            FnRegistryId::ConstantOne => write!(f, "one"),
            FnRegistryId::Delta => write!(f, "delta"),
            FnRegistryId::Zeta => write!(f, "zeta"),
            FnRegistryId::ComposeSingle(g) => write!(f, "compose:{}", g.name()),
            FnRegistryId::Table(path) => write!(f, "table:{}", path.display()),
            FnRegistryId::RandomTable { seed, box_bound } => {
                write!(f, "rand:seed={seed},box={box_bound}")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn convolve_examples() {
        let zeta = MultiFn::zeta(1).unwrap();
        assert_eq!(dirichlet_convolve_point(&zeta, &zeta, &[12]).unwrap(), 6); // τ(12)

        let mu = MultiFn::mobius_fn(1).unwrap();
        assert_eq!(dirichlet_convolve_point(&mu, &zeta, &[5]).unwrap(), 0);

        let mu2 = MultiFn::mobius_fn(2).unwrap();
        let gcd2 = MultiFn::gcd_of_args(2).unwrap();
        assert_eq!(dirichlet_convolve_point(&mu2, &gcd2, &[4, 4]).unwrap(), 2); // φ(4)
    }

    #[test]
    fn convolve_arity_mismatch() {
        let zeta1 = MultiFn::zeta(1).unwrap();
        let zeta2 = MultiFn::zeta(2).unwrap();
        assert!(dirichlet_convolve_point(&zeta1, &zeta2, &[4]).is_err());
        assert!(dirichlet_convolve_point(&zeta1, &zeta1, &[4, 4]).is_err());
    }

    #[test]
    fn mobius_k_examples() {
        assert_eq!(mobius_k(&[1, 1]).unwrap(), 1);
        assert_eq!(mobius_k(&[2, 3]).unwrap(), 1);
        assert_eq!(mobius_k(&[4, 3]).unwrap(), 0);
    }

    #[test]
    fn transform_examples() {
        let gcd2 = MultiFn::gcd_of_args(2).unwrap();
        assert_eq!(mobius_transform_point(&gcd2, &[2, 4]).unwrap(), 0);
        assert_eq!(mobius_transform_point(&gcd2, &[4, 4]).unwrap(), 2);

        let id = MultiFn::product_of_powers(&[1]).unwrap();
        assert_eq!(mobius_transform_point(&id, &[6]).unwrap(), 2); // φ(6)
    }

    #[test]
    fn transform_memo_matches_direct() {
        let f = MultiFn::random_table(9, 10, 2).unwrap();
        let memo = MobiusTransform::new(f.clone());
        for a in 1..=10u64 {
            for b in 1..=10u64 {
                assert_eq!(
                    memo.eval(&[a, b]).unwrap(),
                    mobius_transform_point(&f, &[a, b]).unwrap()
                );
            }
        }
    }

    #[test]
    fn principal_examples() {
        let phi = |n| OneVarFn::Phi.eval(n);
        assert_eq!(principal_point(phi, 2, &[3, 3]).unwrap(), 2);
        assert_eq!(principal_point(phi, 2, &[2, 3]).unwrap(), 0);
        let g = |n: u64| Ok(3 * n as i128 + 1);
        for n in 1..=10 {
            assert_eq!(principal_point(g, 1, &[n]).unwrap(), 3 * n as i128 + 1);
        }
    }

    #[test]
    fn multiplicativity_examples() {
        let gcd2 = MultiFn::gcd_of_args(2).unwrap();
        assert!(check_multiplicative(&gcd2, 12).unwrap().is_pass());

        let lcm2 = MultiFn::lcm_of_args(2).unwrap();
        assert!(check_multiplicative(&lcm2, 12).unwrap().is_pass());

        let sum2 = MultiFn::sum_of_args(2).unwrap();
        match check_multiplicative(&sum2, 6).unwrap() {
            MultiplicativityOutcome::Counterexample {
                a,
                b,
                combined,
                split,
            } => {
                assert_eq!(a, vec![2, 1]);
                assert_eq!(b, vec![3, 1]);
                assert_eq!(combined, 7); // f(6, 1)
                assert_eq!(split, 12); // f(2, 1) f(3, 1)
            }
            other => panic!("expected counterexample, got {other:?}"),
        }
    }

    #[test]
    fn hinted_multiplicative_must_be_unital() {
        let err = MultiFn::new("bad", 2, Some(true), |_| Ok(5));
        assert!(err.is_err());
    }

    #[test]
    fn table_text_roundtrip() {
        let text = "# k=1 box=3\n1 4\n2 -2\n3 0\n";
        let f = MultiFn::from_table_text(text, "inline").unwrap();
        assert_eq!(f.arity(), 1);
        assert_eq!(f.eval(&[1]).unwrap(), 4);
        assert_eq!(f.eval(&[2]).unwrap(), -2);
        assert_eq!(f.eval(&[3]).unwrap(), 0);
        assert!(f.eval(&[4]).is_err()); // outside the declared box
    }

    #[test]
    fn table_duplicate_and_partial_rejected() {
        assert!(MultiFn::from_table_text("1 1\n1 2\n", "dup").is_err());
        assert!(MultiFn::from_table_text("1 1 5\n2 2 5\n", "partial").is_err());
    }

    #[test]
    fn random_table_is_deterministic() {
        let a = MultiFn::random_table(7, 12, 2).unwrap();
        let b = MultiFn::random_table(7, 12, 2).unwrap();
        for x in 1..=12u64 {
            for y in 1..=12u64 {
                let va = a.eval(&[x, y]).unwrap();
                assert_eq!(va, b.eval(&[x, y]).unwrap());
                assert!((-9..=9).contains(&va));
            }
        }
        let c = MultiFn::random_table(8, 12, 2).unwrap();
        let differs = (1..=12u64)
            .any(|x| (1..=12u64).any(|y| a.eval(&[x, y]).unwrap() != c.eval(&[x, y]).unwrap()));
        assert!(differs);
    }

    #[test]
    fn registry_parse_and_resolve() {
        assert_eq!(FnRegistryId::parse("gcd").unwrap(), FnRegistryId::GcdOfArgs);
        assert_eq!(
            FnRegistryId::parse("pow:1,1").unwrap(),
            FnRegistryId::ProductOfPowers(vec![1, 1])
        );
        assert_eq!(
            FnRegistryId::parse("rand:seed=7,box=12").unwrap(),
            FnRegistryId::RandomTable {
                seed: 7,
                box_bound: 12
            }
        );
        assert!(FnRegistryId::parse("nope").is_err());
        assert!(FnRegistryId::parse("rand:seed=7").is_err());

        let f = FnRegistryId::parse("compose:phi")
            .unwrap()
            .resolve(3)
            .unwrap();
        assert_eq!(f.eval(&[6, 4, 2]).unwrap(), 1); // φ(gcd) = φ(2) = 1

        // pow arity must match the declared exponent list.
        assert!(FnRegistryId::parse("pow:1,1").unwrap().resolve(3).is_err());

        for id in [
            "gcd",
            "lcm",
            "sum",
            "one",
            "delta",
            "zeta",
            "pow:2,0",
            "compose:tau",
        ] {
            let parsed = FnRegistryId::parse(id).unwrap();
            assert_eq!(parsed.to_string(), id);
        }
    }
}
