//! `solve`, `scan` and `verify`.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{Context, Result};
use rayon::prelude::*;
use serde_json::{json, Value};
use tropweil_core::obstruction::scan::{proper_sublattice_scan, PrimeScan};
use tropweil_core::obstruction::solve::{IntegerWitness, ModLOutcome};
use tropweil_core::obstruction::{
    assemble_system, solvable_mod_sublattice, solve_exact_infeasibility, solve_mod_w, verify_candidate_phi,
    AssembleOptions, EquationSystem, Lambda, ObstructionContext, SparseT, SublatticeSpec,
};
use tropweil_core::BigRational;

use super::{rat_list, sparse_int, sparse_rat, row_provenance, Outcome};
use crate::formats::{read_json, ChainList, LambdaFile, ModSpec, SublatticeFile};
use crate::matrix_text::{format_rational, write_rat_vector};
use crate::report::Claim;

fn sparse_t(v: &SparseT) -> Value {
    Value::Object(v.0.iter().map(|(k, x)| (k.to_string(), Value::String(x.to_string()))).collect())
}

fn rat_t(v: &BTreeMap<usize, BigRational>) -> Value {
    Value::Object(v.iter().map(|(k, x)| (k.to_string(), Value::String(format_rational(x)))).collect())
}

pub fn context(d: i64, slack_descent: bool) -> ObstructionContext {
    ObstructionContext::new(assemble_system(d, AssembleOptions { slack_descent, omit_descent: false }))
}

fn system_info(sys: &EquationSystem, ctx: &ObstructionContext) -> Value {
    let counts: Vec<_> = sys
        .counts
        .iter()
        .map(|(k, n, t)| json!({ "kind": k.to_string(), "rows": n, "monomials": t }))
        .collect();
    json!({
        "rows": sys.rows.len(),
        "slots": sys.nslots,
        "rank": ctx.rank(),
        "obstruction_image_dim": ctx.image_dim(),
        "counts": counts,
        "slack_descent": sys.options.slack_descent,
    })
}

fn integer_witness(w: &IntegerWitness) -> Value {
    json!({
        "coordinate": w.coordinate,
        "functional": write_rat_vector(&w.functional),
        "delta": w.delta.to_string(),
        "y": sparse_rat(&w.y),
    })
}

/// JSON for an outcome; solutions are summarized, witnesses in full.
fn outcome_json(ctx: &ObstructionContext, out: &ModLOutcome) -> (Value, Value) {
    let sys = &ctx.system;
    match out {
        ModLOutcome::Solvable(s) => {
            let res: BTreeMap<String, Value> =
                s.residuals.iter().map(|(i, r)| (i.to_string(), rat_t(r))).collect();
            (
                json!({ "status": "solvable", "lambda_slots": s.lambda.len(), "residual_rows": s.residuals.len() }),
                json!({ "kind": "solution", "residuals": res }),
            )
        }
        ModLOutcome::Rational(w) => (
            json!({ "status": "rationally-obstructed" }),
            json!({
                "kind": "rational",
                "y": sparse_int(&w.y),
                "rows": row_provenance(sys, w.y.iter().map(|(i, _)| *i)),
                "g": write_rat_vector(&w.g),
                "value": format_rational(&w.value),
            }),
        ),
        ModLOutcome::Integer(w) => (
            json!({ "status": "integrally-obstructed" }),
            json!({ "kind": "integer", "witness": integer_witness(w), "rows": row_provenance(sys, w.y.iter().map(|(i, _)| *i)) }),
        ),
    }
}

pub struct SolveArgs<'a> {
    pub d: i64,
    pub modulus: Option<&'a str>,
    pub slack_descent: bool,
    pub lambda_out: Option<&'a Path>,
}

pub fn solve(a: &SolveArgs) -> Result<Outcome> {
    let ctx = context(a.d, a.slack_descent);
    let info = system_info(&ctx.system, &ctx);
    let mut certificates = BTreeMap::new();
    let mut internal_failure = None;
    let Some(m) = a.modulus else {
        let out = solve_exact_infeasibility(&ctx);
        let (observed, result) = match &out {
            Ok(w) => {
                if !w.verify(&ctx.system) {
                    internal_failure = Some("exact infeasibility witness failed re-verification".to_string());
                }
                certificates.insert(
                    "exact_infeasibility".to_string(),
                    json!({
                        "y": sparse_int(&w.y),
                        "rows": row_provenance(&ctx.system, w.y.iter().map(|(i, _)| *i)),
                        "yR": sparse_t(&w.value),
                    }),
                );
                (true, json!({ "status": "infeasible", "certificate_rows": w.y.len() }))
            }
            Err(_) => (false, json!({ "status": "feasible" })),
        };
        let claims = vec![Claim::new("no-exact-solution", "A lambda = R has no rational solution", true, observed)];
        let summary = format!(
            "solve d={}: {} rows, rank {}, on-the-nose system {}",
            a.d,
            ctx.system.rows.len(),
            ctx.rank(),
            if observed { "infeasible (certificate attached)" } else { "FEASIBLE" }
        );
        return Ok(Outcome {
            d: Some(a.d),
            claims,
            result: json!({ "system": info, "exact": result }),
            certificates,
            summary,
            internal_failure,
        });
    };

    let spec = ModSpec::parse(m)?;
    let l = &spec.lattice;
    let proper = l.is_proper();
    let out = if proper { solvable_mod_sublattice(&ctx, l) } else { solve_mod_w(&ctx) };
    if !out.verify(&ctx, l) {
        internal_failure = Some(format!("certificate for mod {} failed re-verification", spec.name));
    }
    let (status, cert) = outcome_json(&ctx, &out);
    certificates.insert("mod_l".to_string(), cert);
    if let (ModLOutcome::Solvable(s), Some(path)) = (&out, a.lambda_out) {
        let file = LambdaFile::from_lambda(&Lambda::from_solution(a.d, s));
        let text = serde_json::to_string_pretty(&file)? + "\n";
        std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?;
    }
    let claims = if proper {
        vec![Claim::new("not-solvable-mod-proper", "no solution modulo a proper sublattice of W", false, out.is_solvable())]
    } else {
        vec![Claim::new("solvable-mod-w", "a solution exists modulo W", true, out.is_solvable())]
    };
    let summary = format!(
        "solve d={} mod {}: {}",
        a.d,
        spec.name,
        status["status"].as_str().unwrap_or("?")
    );
    let result = json!({
        "system": info,
        "modulus": { "name": spec.name, "generators": SublatticeFile::from_spec(l), "proper": proper },
        "outcome": status,
    });
    Ok(Outcome { d: Some(a.d), claims, result, certificates, summary, internal_failure })
}

fn prime_scan(p: &PrimeScan) -> Value {
    json!({ "p": p.p, "tested": p.tested, "solvable": p.solvable, "certificates_ok": p.certificates_ok })
}

fn named_lattices() -> Vec<(String, SublatticeSpec)> {
    let mut out = vec![
        ("0".to_string(), SublatticeSpec::zero()),
        ("<theta>".to_string(), SublatticeSpec::theta()),
        ("<theta,w1>".to_string(), SublatticeSpec::from_i64(&[[1, 0, 0], [0, 1, 0]])),
        ("<w1,w2>".to_string(), SublatticeSpec::from_i64(&[[0, 1, 0], [0, 0, 1]])),
    ];
    for f in tropweil_core::obstruction::projective_functionals(2) {
        out.push((format!("ker({},{},{}) mod 2", f[0], f[1], f[2]), SublatticeSpec::kernel_mod_p(&f, 2)));
    }
    out
}

pub fn scan(d: i64) -> Result<Outcome> {
    let ctx = context(d, false);
    let report = proper_sublattice_scan(&ctx);
    let mut internal_failure = None;
    if !report.mod_w_certificate_ok || report.prime_scans.iter().any(|p| !p.certificates_ok) {
        internal_failure = Some("a scan certificate failed re-verification".to_string());
    }
    let out_w = solve_mod_w(&ctx);
    let (w_status, w_cert) = outcome_json(&ctx, &out_w);
    // the context caches lazily and is not Sync; these eleven solves are cheap
    let explicit: Vec<(String, bool, Value, bool)> = named_lattices()
        .into_iter()
        .map(|(name, l)| {
            let out = solvable_mod_sublattice(&ctx, &l);
            let ok = out.verify(&ctx, &l);
            let (status, _) = outcome_json(&ctx, &out);
            (name, out.is_solvable(), status, ok)
        })
        .collect();
    if explicit.iter().any(|e| !e.3) {
        internal_failure = Some("an explicit sublattice certificate failed re-verification".to_string());
    }
    let claims = vec![Claim::new(
        "no-proper-sublattice",
        "no proper sublattice L of W admits a solution modulo L",
        true,
        report.no_proper_sublattice(),
    )];
    let result = json!({
        "system": system_info(&ctx.system, &ctx),
        "mod_w": w_status,
        "mod_w_certificate_ok": report.mod_w_certificate_ok,
        "j_generators": report.j_generators.iter().map(|g| rat_list(g)).collect::<Vec<_>>(),
        "j_rank": report.j_rank,
        "rational_functionals": report.rational_functionals.iter().map(|g| rat_list(g)).collect::<Vec<_>>(),
        "bad_primes": report.bad_primes,
        "prime_scans": report.prime_scans.iter().map(prime_scan).collect::<Vec<_>>(),
        "good_primes_nonempty": report.good_primes_nonempty,
        "explicit": explicit.iter().map(|(n, s, st, _)| json!({ "lattice": n, "solvable": s, "outcome": st })).collect::<Vec<_>>(),
    });
    let mut certificates = BTreeMap::new();
    certificates.insert("mod_w".to_string(), w_cert);
    let summary = format!(
        "scan d={d}: mod W {}, proper sublattices working: {}, bad primes {:?}",
        w_status["status"].as_str().unwrap_or("?"),
        if report.no_proper_sublattice() { "none" } else { "SOME" },
        report.bad_primes
    );
    Ok(Outcome { d: Some(d), claims, result, certificates, summary, internal_failure })
}

pub fn verify(lambda_path: &Path, modulus: &str, chains_path: &Path) -> Result<Outcome> {
    let lf: LambdaFile = read_json(lambda_path)?;
    let lambda = lf.to_lambda().with_context(|| format!("invalid lambda file {}", lambda_path.display()))?;
    let spec = ModSpec::parse(modulus)?;
    let list: ChainList = read_json(chains_path)?;
    let chains = list.into_chains().with_context(|| format!("invalid chain in {}", chains_path.display()))?;
    if let Some(c) = chains.iter().find(|c| c.d != lambda.d) {
        anyhow::bail!("chain has d = {} but lambda has d = {}", c.d, lambda.d);
    }
    let chunk = chains.len().div_ceil(rayon::current_num_threads().max(1)).max(1);
    let verdicts: Vec<_> = chains
        .par_chunks(chunk)
        .map(|cs| verify_candidate_phi(&lambda, &spec.lattice, cs).verdicts)
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    let failures = verdicts.iter().filter(|v| !v.in_l).count();
    let claims = vec![Claim::new(
        "candidate-passes",
        "Phi(alpha(c)) - vol(c) lies in L for every chain",
        true,
        failures == 0,
    )];
    let result = json!({
        "modulus": spec.name,
        "chains": verdicts.len(),
        "failures": failures,
        "verdicts": verdicts.iter().map(|v| json!({ "in_l": v.in_l, "defect": rat_t(&v.defect) })).collect::<Vec<_>>(),
    });
    let summary = format!("verify mod {}: {failures} of {} chain(s) fail", spec.name, verdicts.len());
    Ok(Outcome { d: Some(lambda.d), claims, result, summary, ..Default::default() })
}
