//! One function per verb. Each returns an [`Outcome`]; the CLI wraps it
//! into a [`Report`](crate::report::Report).

pub mod chain;
pub mod classes;
pub mod hodge;
pub mod obstruction;
pub mod selftest;

use std::collections::BTreeMap;

use num_traits::Zero;
use serde_json::{json, Map, Value};
use tropweil_core::multilinear::{t_label, wedge2_label, Wedge2};
use tropweil_core::obstruction::EquationSystem;
use tropweil_core::weil::ClassH22;
use tropweil_core::{BigInt, BigRational};

use crate::matrix_text::format_rational;
use crate::report::Claim;

#[derive(Debug, Default)]
pub struct Outcome {
    pub d: Option<i64>,
    pub claims: Vec<Claim>,
    pub result: Value,
    pub certificates: BTreeMap<String, Value>,
    /// One-paragraph human summary for standard error.
    pub summary: String,
    /// Set when an invariant that should always hold was violated.
    pub internal_failure: Option<String>,
}

/// Nonzero coordinates as `label → "p/q"`.
pub fn labeled(v: &[BigRational], label: impl Fn(usize) -> String) -> Value {
    let mut m = Map::new();
    for (i, x) in v.iter().enumerate() {
        if !x.is_zero() {
            m.insert(label(i), Value::String(format_rational(x)));
        }
    }
    Value::Object(m)
}

pub fn t_map(v: &[BigRational]) -> Value {
    labeled(v, t_label)
}

pub fn h22_map(c: &ClassH22) -> Value {
    labeled(&c.0, ClassH22::label)
}

pub fn wedge_map(w: &Wedge2) -> Value {
    labeled(&w.0, wedge2_label)
}

pub fn rat_list(v: &[BigRational]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(format_rational(x))).collect())
}

/// `[[row, "c"], …]` for a sparse row combination.
pub fn sparse_int(y: &[(usize, BigInt)]) -> Value {
    Value::Array(y.iter().map(|(i, c)| json!([i, c.to_string()])).collect())
}

pub fn sparse_rat(y: &[(usize, BigRational)]) -> Value {
    Value::Array(y.iter().map(|(i, c)| json!([i, format_rational(c)])).collect())
}

/// Where rows come from, so a certificate can be re-assembled offline.
pub fn row_provenance(sys: &EquationSystem, rows: impl Iterator<Item = usize>) -> Value {
    Value::Array(
        rows.map(|i| {
            let r = &sys.rows[i];
            json!({ "row": i, "kind": r.kind.to_string(), "monomial": r.monomial, "residual": r.residual })
        })
        .collect(),
    )
}
