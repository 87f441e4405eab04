//! The canonical coordinate orderings, exported as JSON
//! (`docs/index_tables.json`).

use serde_json::{json, Value};
use tropweil_core::multilinear::{
    sym2_gp_label, sym2_pairs, sym2_w_label, t_label, wedge2_label, wedge3_label, SYM2_GP_DIM, SYM2_W_DIM, T_DIM,
    WEDGE2_PAIRS, WEDGE3_TRIPLES,
};
use tropweil_core::weil::ClassH22;

const PARAMS: [&str; 4] = ["a", "b", "c", "e"];

fn labels(n: usize, f: impl Fn(usize) -> String) -> Vec<Value> {
    (0..n).map(|i| json!({ "index": i, "label": f(i) })).collect()
}

pub fn index_tables() -> Value {
    json!({
        "gammap": PARAMS,
        "gamma2": ["e1", "e2", "e3", "e4"],
        "gamma2_tensor_gammap": {
            "rule": "index = 4*p + k, p over (a,b,c,e), k over (e1..e4)",
            "entries": labels(16, |i| format!("{}*e{}", PARAMS[i / 4], i % 4 + 1)),
        },
        "wedge2": {
            "pairs": WEDGE2_PAIRS.iter().map(|&(a, b)| [a + 1, b + 1]).collect::<Vec<_>>(),
            "entries": labels(6, wedge2_label),
        },
        "wedge3": {
            "triples": WEDGE3_TRIPLES.iter().map(|&(a, b, c)| [a + 1, b + 1, c + 1]).collect::<Vec<_>>(),
            "entries": labels(4, wedge3_label),
        },
        "sym2_gammap": {
            "rule": "pairs i <= j, lexicographic; off-diagonal coordinate is the coefficient of the monomial x_i*x_j",
            "pairs": sym2_pairs(4),
            "entries": labels(SYM2_GP_DIM, sym2_gp_label),
        },
        "sym2_wedge2": {
            "rule": "pairs i <= j over the wedge2 order, lexicographic",
            "pairs": sym2_pairs(6),
            "entries": labels(SYM2_W_DIM, sym2_w_label),
        },
        "t": {
            "rule": "index = sym2_gammap * 21 + sym2_wedge2",
            "entries": labels(T_DIM, t_label),
        },
        "h22": {
            "rule": "index = 6 * (gamma pair) + (e pair), both in wedge2 order",
            "entries": labels(36, ClassH22::label),
        },
        "lambda1_slot": {
            "rule": "slot = ((x*4 + q)*4 + m)*6 + w; x in gamma2_tensor_gammap, q in gammap, m in gamma2, w in wedge2",
            "count": 1536,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let t = index_tables();
        assert_eq!(t["t"]["entries"].as_array().unwrap().len(), 210);
        assert_eq!(t["t"]["entries"][22]["label"], "a*b*e12*e13");
        assert_eq!(t["h22"]["entries"][5]["label"], "g12*e34");
        assert_eq!(t["gamma2_tensor_gammap"]["entries"][6]["label"], "b*e3");
    }
}
