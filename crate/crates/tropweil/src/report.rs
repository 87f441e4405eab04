//! The JSON report envelope shared by every verb.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const TOOL: &str = "tropweil";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// A statement the computation either reproduces or contradicts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub id: String,
    pub statement: String,
    pub expected: bool,
    pub observed: bool,
}

impl Claim {
    pub fn new(id: &str, statement: &str, expected: bool, observed: bool) -> Self {
        Claim { id: id.to_string(), statement: statement.to_string(), expected, observed }
    }

    pub fn holds(&self) -> bool {
        self.expected == self.observed
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub sha256: String,
    pub data: Value,
}

impl Certificate {
    pub fn new(data: Value) -> Self {
        Certificate { sha256: sha256_json(&data), data }
    }
}

/// SHA-256 of the compact serialization (object keys sorted).
pub fn sha256_json(v: &Value) -> String {
    let bytes = serde_json::to_vec(v).expect("JSON values serialize");
    let digest = Sha256::digest(&bytes);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Matches,
    Contradicts,
    NoClaims,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub elapsed_ms: u128,
    pub finished_unix_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub args: Value,
    pub d: Option<i64>,
    pub seed: u64,
    pub threads: usize,
    pub verdict: Verdict,
    pub exit_code: i32,
    pub claims: Vec<Claim>,
    pub result: Value,
    pub certificates: BTreeMap<String, Certificate>,
    /// The only field that varies between identical runs.
    pub timing: Timing,
}

pub fn verdict_of(claims: &[Claim]) -> Verdict {
    if claims.is_empty() {
        Verdict::NoClaims
    } else if claims.iter().all(Claim::holds) {
        Verdict::Matches
    } else {
        Verdict::Contradicts
    }
}
