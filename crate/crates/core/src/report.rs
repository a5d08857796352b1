//! Verification records: one identity instance, both evaluation routes,
//! and whether they agreed.

use std::collections::BTreeMap;
use std::time::Duration;

use num::bigint::BigInt;
use serde::Serialize;

/// One verification record. `equal` is derived from `lhs == rhs` at
/// construction and can never disagree with the values.
#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub identity_id: String,
    pub params: BTreeMap<String, String>,
    pub lhs: BigInt,
    pub rhs: BigInt,
    pub equal: bool,
    pub lhs_mode: &'static str,
    pub rhs_mode: &'static str,
    pub elapsed: Duration,
}

#[derive(Serialize)]
struct ReportWire<'a> {
    identity_id: &'a str,
    params: &'a BTreeMap<String, String>,
    lhs: String,
    rhs: String,
    equal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<String>,
}

impl IdentityReport {
    pub fn new(
        identity_id: impl Into<String>,
        params: BTreeMap<String, String>,
        lhs: BigInt,
        rhs: BigInt,
        elapsed: Duration,
    ) -> Self {
        let equal = lhs == rhs;
        IdentityReport {
            identity_id: identity_id.into(),
            params,
            lhs,
            rhs,
            equal,
            lhs_mode: "brute",
            rhs_mode: "closed_form",
            elapsed,
        }
    }

    /// Replaces the closed-form value (test hook for exercising the
    /// mismatch path); `equal` is recomputed.
    pub fn with_rhs(mut self, rhs: BigInt) -> Self {
        self.rhs = rhs;
        self.equal = self.lhs == self.rhs;
        self
    }

    /// One JSON object. Integers are decimal strings so consumers never
    /// lose precision. `include_elapsed = false` keeps repeated runs
    /// byte-identical.
    pub fn to_json(&self, include_elapsed: bool) -> String {
        let wire = ReportWire {
            identity_id: &self.identity_id,
            params: &self.params,
            lhs: self.lhs.to_string(),
            rhs: self.rhs.to_string(),
            equal: self.equal,
            elapsed_ms: include_elapsed.then(|| self.elapsed.as_millis().to_string()),
        };
        serde_json::to_string(&wire).expect("report serialization cannot fail")
    }

    /// Compact `key=value;...` rendering of the parameter set.
    pub fn params_string(&self) -> String {
        self.params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";")
    }
}

/// Builder for parameter maps with consistent value formatting.
pub fn params_from<I, K, V>(pairs: I) -> BTreeMap<String, String>
where
    I: IntoIterator<Item = (K, V)>,
    K: Into<String>,
    V: ToString,
{
    pairs
        .into_iter()
        .map(|(k, v)| (k.into(), v.to_string()))
        .collect()
}
