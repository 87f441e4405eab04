use anyhow::Result;
use serde_json::json;
use tropweil_core::hodge::{hodge_kernel, is_hodge};
use tropweil_core::linalg::{LatticeSpec, RatMatrix};
use tropweil_core::q;
use tropweil_core::weil::standard_classes;

use super::{h22_map, Outcome};
use crate::matrix_text::write_rat_matrix;
use crate::report::Claim;

pub fn hodge(d: i64) -> Result<Outcome> {
    let kernel = hodge_kernel(d);
    let (theta, w1, w2) = standard_classes(d);
    let basis = kernel.basis();
    let rank = basis.len();
    let member = |c: &tropweil_core::weil::ClassH22| kernel.contains(&c.0).unwrap_or(false);
    let dw1 = w1.scale(&q(d));
    let sat = LatticeSpec::new(36, vec![theta.0.clone(), dw1.0.clone(), w2.0.clone()]).saturation();
    let contains_sat = kernel.contains_lattice(&sat).unwrap_or(false);
    let verdicts: Vec<_> = [("theta", &theta), ("w1", &w1), ("w2", &w2)]
        .into_iter()
        .map(|(n, c)| json!({ "class": n, "phi_zero": is_hodge(c, d), "in_kernel": member(c) }))
        .collect();
    let all_hodge = is_hodge(&theta, d) && is_hodge(&w1, d) && is_hodge(&w2, d);
    let claims = vec![Claim::new("hodge-classes", "phi(theta) = phi(w1) = phi(w2) = 0", true, all_hodge)];
    let basis_text = write_rat_matrix(&RatMatrix::from_rows(basis.clone(), 36));
    let result = json!({
        "kernel_rank": rank,
        "kernel_basis": basis.iter().map(|b| h22_map(&tropweil_core::weil::ClassH22(b.clone()))).collect::<Vec<_>>(),
        "memberships": verdicts,
        "contains_saturation_of_theta_dw1_w2": contains_sat,
    });
    let mut certificates = std::collections::BTreeMap::new();
    certificates.insert("kernel_basis".to_string(), json!({ "matrix": basis_text }));
    let summary = format!(
        "hodge d={d}: kernel rank {rank}; theta, w1, w2 {} Hodge; saturation {}contained",
        if all_hodge { "are" } else { "are NOT all" },
        if contains_sat { "" } else { "NOT " }
    );
    Ok(Outcome { d: Some(d), claims, result, certificates, summary, internal_failure: None })
}
