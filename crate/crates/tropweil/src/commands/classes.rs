use anyhow::Result;
use serde_json::json;
use tropweil_core::multilinear::{sym2_index, t_index, t_label, ClassT, T_DIM};
use tropweil_core::weil::{expand_class_to_T, standard_classes, theta_typo_report, w1_display, w2_display};
use tropweil_core::{q, BigRational};

use super::{h22_map, rat_list, t_map, Outcome};
use crate::matrix_text::{format_rational, write_rat_vector};
use crate::report::Claim;
use crate::tables::index_tables;

fn differences(computed: &ClassT, displayed: &ClassT) -> serde_json::Value {
    (0..T_DIM)
        .filter(|&i| computed.0[i] != displayed.0[i])
        .map(|i| {
            json!({
                "coordinate": t_label(i),
                "computed": format_rational(&computed.0[i]),
                "displayed": format_rational(&displayed.0[i]),
            })
        })
        .collect()
}

/// `(label, wedge pair, [(Γp pair, coefficient)])`.
pub type MinorRow = (&'static str, (usize, usize), Vec<((usize, usize), BigRational)>);

/// The θ coefficients predicted by the 2×2-minor computation.
pub fn theta_minor_table(d: i64) -> Vec<MinorRow> {
    let (a, b, c, e) = (0, 1, 2, 3);
    let dq = q(d);
    vec![
        ("e13^2", (1, 1), vec![((a, a), dq.clone())]),
        ("e24^2", (4, 4), vec![((c, c), dq.clone())]),
        ("e34^2", (5, 5), vec![((a, c), q(d * d)), ((b, b), q(-d * d))]),
        ("e12*e34", (0, 5), vec![((e, e), q(2))]),
        ("e14^2", (2, 2), vec![((a, c), dq.clone()), ((e, e), q(-1))]),
        ("e23^2", (3, 3), vec![((a, c), dq.clone()), ((e, e), q(-1))]),
        ("e14*e23", (2, 3), vec![((b, b), q(2 * d))]),
        ("e13*e24", (1, 4), vec![((b, b), q(2 * d)), ((e, e), q(2))]),
        ("e12^2", (0, 0), vec![((a, c), q(1)), ((b, b), q(-1))]),
    ]
}

/// Every listed Sym²(∧²Γ2) column of expand(θ) equals the predicted
/// Sym²Γp vector (all ten coordinates).
pub fn theta_table_mismatches(d: i64, theta_t: &ClassT) -> Vec<String> {
    let mut bad = Vec::new();
    for (name, (w1, w2), coeffs) in theta_minor_table(d) {
        let w = sym2_index(6, w1, w2);
        let mut expected = vec![q(0); 10];
        for ((p1, p2), c) in coeffs {
            expected[sym2_index(4, p1, p2)] = c;
        }
        for (p, ex) in expected.iter().enumerate() {
            if &theta_t.0[t_index(p, w)] != ex {
                bad.push(format!("{name}: {}", t_label(t_index(p, w))));
            }
        }
    }
    bad
}

pub fn classes(d: i64) -> Result<Outcome> {
    let (theta, w1, w2) = standard_classes(d);
    let (tt, w1t, w2t) = (expand_class_to_T(&theta, d), expand_class_to_T(&w1, d), expand_class_to_T(&w2, d));
    let (w1d, w2d) = (w1_display(d), w2_display(d));
    let typo = theta_typo_report(d);
    let theta_bad = theta_table_mismatches(d, &tt);

    let claims = vec![
        Claim::new(
            "w1-expansion",
            "expand(w1) = D((1/d)e12^2 + 2e12e34 + d e34^2) - D(e14 - e23)^2",
            true,
            w1t == w1d,
        ),
        Claim::new("w2-expansion", "expand(w2) = 2D(e12 - d e34)(e14 - e23)", true, w2t == w2d),
        Claim::new("theta-minors", "expand(theta) has the 2x2-minor coefficients", true, theta_bad.is_empty()),
    ];
    let class = |h, t: &ClassT| json!({ "h22": h, "t": t_map(&t.0) });
    let result = json!({
        "classes": {
            "theta": class(h22_map(&theta), &tt),
            "w1": class(h22_map(&w1), &w1t),
            "w2": class(h22_map(&w2), &w2t),
        },
        "expansion_checks": {
            "w1": { "matches_display": w1t == w1d, "differences": differences(&w1t, &w1d) },
            "w2": { "matches_display": w2t == w2d, "differences": differences(&w2t, &w2d) },
            "theta_minor_table": { "mismatches": theta_bad },
            "theta_display_typos": {
                "differences": typo.differences.iter().map(|l| json!({
                    "coordinate": l.coordinate,
                    "displayed": format_rational(&l.displayed),
                    "computed": format_rational(&l.computed),
                })).collect::<Vec<_>>(),
                "corrected_display_matches": typo.corrected_matches,
            },
        },
        "index_tables": index_tables(),
    });
    let mut certificates = std::collections::BTreeMap::new();
    certificates.insert(
        "expansions".to_string(),
        json!({
            "theta": write_rat_vector(&tt.0),
            "w1": write_rat_vector(&w1t.0),
            "w2": write_rat_vector(&w2t.0),
            "w1_display": write_rat_vector(&w1d.0),
            "w2_display": write_rat_vector(&w2d.0),
            "theta_h22": rat_list(&theta.0),
            "w1_h22": rat_list(&w1.0),
            "w2_h22": rat_list(&w2.0),
        }),
    );
    let summary = format!(
        "classes d={d}: w1 expansion {} the display, w2 expansion {}, theta minor table {}, {} literal theta display typo(s)",
        if w1t == w1d { "matches" } else { "DIFFERS from" },
        if w2t == w2d { "matches" } else { "differs" },
        if theta_bad.is_empty() { "ok" } else { "MISMATCH" },
        typo.differences.len()
    );
    Ok(Outcome { d: Some(d), claims, result, certificates, summary, internal_failure: None })
}
