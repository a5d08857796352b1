//! Parameter bundles for the general identities.

use std::collections::BTreeMap;

use crate::arith::gcd_many;
use crate::error::{Error, Result};
use crate::multifn::{MultiFn, OneVarFn};
use crate::poly::IntPolynomial;

/// One coprimality-restricted summation index: a runs over [1, range]
/// with gcd(a, coprime_to) = 1 and contributes (poly(a), gcd_modulus)
/// to the summand.
#[derive(Debug, Clone)]
pub struct RestrictedBlock {
    pub range: u64,
    pub gcd_modulus: u64,
    pub coprime_to: u64,
    pub poly: IntPolynomial,
}

/// One unrestricted summation index: b runs over all of [1, range] and
/// contributes (poly(b), gcd_modulus).
#[derive(Debug, Clone)]
pub struct FreeBlock {
    pub range: u64,
    pub gcd_modulus: u64,
    pub poly: IntPolynomial,
}

/// Parameters of the general sum: k restricted indices, ℓ free indices,
/// and a weight function f of k + ℓ variables applied to the gcd values.
#[derive(Debug, Clone)]
pub struct MainParams {
    restricted: Vec<RestrictedBlock>,
    free: Vec<FreeBlock>,
    f: MultiFn,
}

impl MainParams {
    pub fn new(restricted: Vec<RestrictedBlock>, free: Vec<FreeBlock>, f: MultiFn) -> Result<Self> {
        if restricted.is_empty() && free.is_empty() {
            return Err(Error::InvalidParams(
                "at least one summation index is required (k and ell cannot both be 0)".into(),
            ));
        }
        for (i, b) in restricted.iter().enumerate() {
            if b.range == 0 || b.gcd_modulus == 0 || b.coprime_to == 0 {
                return Err(Error::ZeroArgument("MainParams restricted block"));
            }
            if b.range % b.gcd_modulus != 0 || b.range % b.coprime_to != 0 {
                return Err(Error::InvalidParams(format!(
                    "restricted block {i}: need gcd_modulus | range and coprime_to | range, \
                     got m={}, s={}, r={}",
                    b.gcd_modulus, b.coprime_to, b.range
                )));
            }
        }
        for (j, b) in free.iter().enumerate() {
            if b.range == 0 || b.gcd_modulus == 0 {
                return Err(Error::ZeroArgument("MainParams free block"));
            }
            if b.range % b.gcd_modulus != 0 {
                return Err(Error::InvalidParams(format!(
                    "free block {j}: need gcd_modulus | range, got n={}, t={}",
                    b.gcd_modulus, b.range
                )));
            }
        }
        let arity = restricted.len() + free.len();
        if f.arity() != arity {
            return Err(Error::ArityMismatch {
                name: f.name().to_string(),
                expected: arity,
                got: f.arity(),
            });
        }
        Ok(MainParams {
            restricted,
            free,
            f,
        })
    }

    pub fn k(&self) -> usize {
        self.restricted.len()
    }

    pub fn ell(&self) -> usize {
        self.free.len()
    }

    pub fn restricted(&self) -> &[RestrictedBlock] {
        &self.restricted
    }

    pub fn free(&self) -> &[FreeBlock] {
        &self.free
    }

    pub fn f(&self) -> &MultiFn {
        &self.f
    }

    /// Parameter map for reports.
    pub fn describe(&self) -> BTreeMap<String, String> {
        let join = |it: Vec<String>| it.join(",");
        let mut map = BTreeMap::new();
        map.insert("k".into(), self.k().to_string());
        map.insert("ell".into(), self.ell().to_string());
        if !self.restricted.is_empty() {
            map.insert(
                "r".into(),
                join(
                    self.restricted
                        .iter()
                        .map(|b| b.range.to_string())
                        .collect(),
                ),
            );
            map.insert(
                "m".into(),
                join(
                    self.restricted
                        .iter()
                        .map(|b| b.gcd_modulus.to_string())
                        .collect(),
                ),
            );
            map.insert(
                "s".into(),
                join(
                    self.restricted
                        .iter()
                        .map(|b| b.coprime_to.to_string())
                        .collect(),
                ),
            );
            map.insert(
                "P".into(),
                self.restricted
                    .iter()
                    .map(|b| b.poly.coefficient_string())
                    .collect::<Vec<_>>()
                    .join(";"),
            );
        }
        if !self.free.is_empty() {
            map.insert(
                "t".into(),
                join(self.free.iter().map(|b| b.range.to_string()).collect()),
            );
            map.insert(
                "n".into(),
                join(
                    self.free
                        .iter()
                        .map(|b| b.gcd_modulus.to_string())
                        .collect(),
                ),
            );
            map.insert(
                "Q".into(),
                self.free
                    .iter()
                    .map(|b| b.poly.coefficient_string())
                    .collect::<Vec<_>>()
                    .join(";"),
            );
        }
        map.insert("f".into(), self.f.name().to_string());
        map
    }
}

/// Restricted index for the single-function variant: the gcd modulus is
/// the shared n of [`GParams`].
#[derive(Debug, Clone)]
pub struct GRestrictedBlock {
    pub range: u64,
    pub coprime_to: u64,
    pub poly: IntPolynomial,
}

#[derive(Debug, Clone)]
pub struct GFreeBlock {
    pub range: u64,
    pub poly: IntPolynomial,
}

/// Parameters of the single-variable-function sum: all gcds share one
/// modulus n and the weight is g applied to the gcd of all polynomial
/// values together with n.
#[derive(Debug, Clone)]
pub struct GParams {
    modulus: u64,
    restricted: Vec<GRestrictedBlock>,
    free: Vec<GFreeBlock>,
    g: OneVarFn,
}

impl GParams {
    pub fn new(
        modulus: u64,
        restricted: Vec<GRestrictedBlock>,
        free: Vec<GFreeBlock>,
        g: OneVarFn,
    ) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::ZeroArgument("GParams modulus"));
        }
        if restricted.is_empty() && free.is_empty() {
            return Err(Error::InvalidParams(
                "at least one summation index is required (k and ell cannot both be 0)".into(),
            ));
        }
        for (i, b) in restricted.iter().enumerate() {
            if b.range == 0 || b.coprime_to == 0 {
                return Err(Error::ZeroArgument("GParams restricted block"));
            }
            if b.range % modulus != 0 || b.range % b.coprime_to != 0 {
                return Err(Error::InvalidParams(format!(
                    "restricted block {i}: need n | range and coprime_to | range, \
                     got n={modulus}, s={}, r={}",
                    b.coprime_to, b.range
                )));
            }
        }
        for (j, b) in free.iter().enumerate() {
            if b.range == 0 {
                return Err(Error::ZeroArgument("GParams free block"));
            }
            if b.range % modulus != 0 {
                return Err(Error::InvalidParams(format!(
                    "free block {j}: need n | range, got n={modulus}, t={}",
                    b.range
                )));
            }
        }
        Ok(GParams {
            modulus,
            restricted,
            free,
            g,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn k(&self) -> usize {
        self.restricted.len()
    }

    pub fn ell(&self) -> usize {
        self.free.len()
    }

    pub fn restricted(&self) -> &[GRestrictedBlock] {
        &self.restricted
    }

    pub fn free(&self) -> &[GFreeBlock] {
        &self.free
    }

    pub fn g(&self) -> OneVarFn {
        self.g
    }

    /// The equivalent [`MainParams`] instance: every gcd modulus becomes n
    /// and f is g composed with the gcd of all arguments and n. Its brute
    /// sum is exactly the T sum of this parameter set.
    pub fn to_main_params(&self) -> Result<MainParams> {
        let n = self.modulus;
        let g = self.g;
        let arity = self.k() + self.ell();
        let f = MultiFn::new(
            format!("compose:{}|gcd_with:{n}", g.name()),
            arity,
            None,
            move |t| g.eval(crate::arith::gcd(gcd_many(t)?, n)),
        )?;
        let restricted = self
            .restricted
            .iter()
            .map(|b| RestrictedBlock {
                range: b.range,
                gcd_modulus: n,
                coprime_to: b.coprime_to,
                poly: b.poly.clone(),
            })
            .collect();
        let free = self
            .free
            .iter()
            .map(|b| FreeBlock {
                range: b.range,
                gcd_modulus: n,
                poly: b.poly.clone(),
            })
            .collect();
        MainParams::new(restricted, free, f)
    }

    pub fn describe(&self) -> BTreeMap<String, String> {
        let mut map = BTreeMap::new();
        map.insert("n".into(), self.modulus.to_string());
        map.insert("k".into(), self.k().to_string());
        map.insert("ell".into(), self.ell().to_string());
        if !self.restricted.is_empty() {
            map.insert(
                "r".into(),
                self.restricted
                    .iter()
                    .map(|b| b.range.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
            );
            map.insert(
                "s".into(),
                self.restricted
                    .iter()
                    .map(|b| b.coprime_to.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
            );
            map.insert(
                "P".into(),
                self.restricted
                    .iter()
                    .map(|b| b.poly.coefficient_string())
                    .collect::<Vec<_>>()
                    .join(";"),
            );
        }
        if !self.free.is_empty() {
            map.insert(
                "t".into(),
                self.free
                    .iter()
                    .map(|b| b.range.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
            );
            map.insert(
                "Q".into(),
                self.free
                    .iter()
                    .map(|b| b.poly.coefficient_string())
                    .collect::<Vec<_>>()
                    .join(";"),
            );
        }
        map.insert("g".into(), self.g.name().to_string());
        map
    }
}
