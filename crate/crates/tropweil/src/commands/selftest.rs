//! Randomized internal invariants, independent of any claim.

use anyhow::Result;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;
use tropweil_core::chains::{alpha_chain, vol_chain, Cell, Chain};
use tropweil_core::hodge::is_hodge;
use tropweil_core::linalg::RatMatrix;
use tropweil_core::multilinear::{wedge2, ClassT};
use tropweil_core::weil::{gamma1_lattice, standard_classes};
use tropweil_core::{qq, BigInt, BigRational};

use super::Outcome;
use crate::formats::ChainFile;
use crate::matrix_text::{parse_rat_matrix, write_rat_matrix};

fn rat(rng: &mut ChaCha8Rng) -> BigRational {
    qq(rng.gen_range(-6..=6), rng.gen_range(1..=4))
}

fn int4(rng: &mut ChaCha8Rng) -> [BigInt; 4] {
    loop {
        let v: [BigInt; 4] = std::array::from_fn(|_| BigInt::from(rng.gen_range(-2..=2)));
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

pub fn random_cell(rng: &mut ChaCha8Rng) -> Cell {
    let x: Vec<BigRational> = (0..16).map(|_| rat(rng)).collect();
    let (u, v) = loop {
        let u: [BigRational; 4] = std::array::from_fn(|_| rat(rng));
        let v: [BigRational; 4] = std::array::from_fn(|_| rat(rng));
        if !wedge2(&u, &v).is_zero() {
            break (u, v);
        }
    };
    let w = loop {
        let w = rat(rng);
        if !w.is_zero() {
            break w;
        }
    };
    if rng.gen_bool(0.5) {
        Cell::triangle(x, int4(rng), u, v, w)
    } else {
        Cell::parallelogram(x, int4(rng), int4(rng), u, v, w)
    }
}

fn one_case(seed: u64, case: u64) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ case.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let d = rng.gen_range(1..=3);
    let mut fails = Vec::new();
    let mut check = |ok: bool, what: &str| {
        if !ok {
            fails.push(format!("case {case} (d={d}): {what}"));
        }
    };

    let cells: Vec<Cell> = (0..rng.gen_range(1..=3)).map(|_| random_cell(&mut rng)).collect();
    let c = Chain { d, cells };
    check(alpha_chain(&c.concat(&c.negated())).is_empty(), "alpha(c - c) != 0");
    let mut sum = vol_chain(&c);
    sum.add_assign_scaled(&BigRational::from_integer(1.into()), &vol_chain(&c.negated()));
    check(sum == ClassT::zero(), "vol(c) + vol(-c) != 0");

    let gens = gamma1_lattice(d).generators().to_vec();
    let g = &gens[rng.gen_range(0..gens.len())];
    let moved = Chain { d, cells: c.cells.iter().map(|x| x.translated(g)).collect() };
    check(alpha_chain(&c.concat(&moved.negated())).is_empty(), "alpha not invariant under Gamma1");

    match ChainFile::from_chain(&c).and_then(|f| f.to_chain()) {
        Ok(back) => check(back == c, "chain JSON round trip"),
        Err(e) => check(false, &format!("chain JSON round trip: {e}")),
    }

    let (r, k) = (rng.gen_range(0..4), rng.gen_range(0..5));
    let m = RatMatrix::from_rows((0..r).map(|_| (0..k).map(|_| rat(&mut rng)).collect()).collect(), k);
    check(parse_rat_matrix(&write_rat_matrix(&m)).ok() == Some(m), "matrix text round trip");

    let (theta, w1, w2) = standard_classes(d);
    check(is_hodge(&theta, d) && is_hodge(&w1, d) && is_hodge(&w2, d), "standard classes not Hodge");
    fails
}

pub fn selftest(seed: u64, cases: u64) -> Result<Outcome> {
    let failures: Vec<String> = (0..cases).into_par_iter().flat_map(|i| one_case(seed, i)).collect();
    let summary = format!("selftest: {cases} case(s), {} failure(s)", failures.len());
    let internal_failure = (!failures.is_empty()).then(|| failures.join("; "));
    Ok(Outcome {
        result: json!({ "cases": cases, "failures": failures }),
        summary,
        internal_failure,
        ..Default::default()
    })
}
