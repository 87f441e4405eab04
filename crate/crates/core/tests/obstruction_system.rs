use std::collections::BTreeMap;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tropweil_core::chains::{Cell, Chain};
use tropweil_core::multilinear::*;
use tropweil_core::obstruction::assemble::{gamma_vector, lambda1_slot, LAMBDA1_SLOTS};
use tropweil_core::obstruction::scan::{first_good_prime, predicted_at_good_prime};
use tropweil_core::obstruction::verify::cell_coefficients;
use tropweil_core::obstruction::*;
use tropweil_core::{q, BigInt, BigRational};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn rand4(r: &mut ChaCha8Rng) -> [i64; 4] {
    core::array::from_fn(|_| r.gen_range(-3..=3))
}

fn rat4(v: [i64; 4]) -> [BigRational; 4] {
    v.map(q)
}

/// `λ1(X; s; u)(ω)` for a scalar-valued λ1, straight from the slot layout.
fn lam1(lam: &[BigInt], x: &[BigRational], s: &[BigRational; 4], u: &[BigRational; 4], w: &[BigRational; 6]) -> BigRational {
    let mut acc = BigRational::zero();
    for xi in 0..16 {
        for qi in 0..4 {
            for mi in 0..4 {
                for wi in 0..6 {
                    let c = &lam[lambda1_slot(xi, qi, mi, wi)];
                    if !c.is_zero() {
                        acc += BigRational::from_integer(c.clone()) * &x[xi] * &s[qi] * &u[mi] * &w[wi];
                    }
                }
            }
        }
    }
    acc
}

/// `Σ_rows m(point)·(row·λ)` and `Σ_rows m(point)·rhs` over rows of one kind.
fn rows_at(sys: &EquationSystem, kind: RowKind, flat: &[BigRational], lam: &[BigInt]) -> (BigRational, Vec<BigRational>) {
    let mut lhs = BigRational::zero();
    let mut rhs = vec![BigRational::zero(); T_DIM];
    for row in sys.rows.iter().filter(|r| r.kind == kind) {
        let mut m = BigRational::from_integer(1.into());
        for (e, x) in row.monomial.iter().zip(flat) {
            for _ in 0..*e {
                m *= x;
            }
        }
        let a: BigInt = row.entries.iter().map(|(s, c)| c * &lam[*s]).sum();
        lhs += &m * BigRational::from_integer(a);
        for (k, v) in &row.rhs.0 {
            rhs[*k] += &m * BigRational::from_integer(v.clone());
        }
    }
    (lhs, rhs)
}

fn t_product(p: &[BigRational], w: &[BigRational], c: i64) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); T_DIM];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in w.iter().enumerate() {
            out[t_index(i, j)] = q(c) * a * b;
        }
    }
    out
}

fn random_lambda(r: &mut ChaCha8Rng) -> Vec<BigInt> {
    (0..LAMBDA1_SLOTS).map(|_| BigInt::from(r.gen_range(-2..=2))).collect()
}

#[test]
fn assembled_rows_recombine_to_the_identities() {
    let sys = assemble_system(1, AssembleOptions::default());
    let mut r = rng(7);
    for _ in 0..4 {
        let lam = random_lambda(&mut r);
        let (s, t, u, v) = (rat4(rand4(&mut r)), rat4(rand4(&mut r)), rat4(rand4(&mut r)), rat4(rand4(&mut r)));
        let uv = wedge2(&u, &v);
        let uv2 = sym_square_embed(&uv, &uv);
        let umv: [BigRational; 4] = core::array::from_fn(|i| &u[i] - &v[i]);

        let flat: Vec<BigRational> = s.iter().chain(&u).chain(&v).cloned().collect();
        let (l, rh) = rows_at(&sys, RowKind::E1, &flat, &lam);
        assert_eq!(l, lam1(&lam, &tensor(&s, &v), &s, &umv, &uv.0));
        assert_eq!(rh, t_product(&sym2_gp(&s, &s), &uv2, 1));

        let flat: Vec<BigRational> = s.iter().chain(&t).chain(&u).chain(&v).cloned().collect();
        let (l, rh) = rows_at(&sys, RowKind::E2, &flat, &lam);
        assert_eq!(l, lam1(&lam, &tensor(&t, &v), &s, &u, &uv.0) - lam1(&lam, &tensor(&s, &u), &t, &v, &uv.0));
        assert_eq!(rh, t_product(&sym2_gp(&s, &t), &uv2, 2));

        let w: [BigRational; 6] = core::array::from_fn(|_| q(r.gen_range(-3..=3)));
        let flat: Vec<BigRational> = t.iter().chain(&s).chain(&u).chain(&w).cloned().collect();
        let (l, rh) = rows_at(&sys, RowKind::C1, &flat, &lam);
        assert_eq!(l, lam1(&lam, &tensor(&t, &u), &s, &u, &w));
        assert!(rh.iter().all(|x| x.is_zero()));

        for i in 0..4 {
            let flat: Vec<BigRational> = s.iter().chain(&u).chain(&w).cloned().collect();
            let (l, _) = rows_at(&sys, RowKind::C2(i), &flat, &lam);
            assert_eq!(l, lam1(&lam, &gamma_vector(1, i), &s, &u, &w));
        }
    }
}

#[test]
fn e2_at_t_equals_s_is_twice_e1() {
    let ctx = ObstructionContext::new(assemble_system(1, AssembleOptions::default()));
    let ker = ctx.exact_kernel();
    assert!(!ker.is_empty());
    let mut r = rng(11);
    let mut lam = vec![BigInt::zero(); LAMBDA1_SLOTS];
    for k in ker {
        let c = BigInt::from(r.gen_range(-2..=2));
        for (a, b) in lam.iter_mut().zip(k) {
            *a += &c * b;
        }
    }
    let e1 = |lam: &[BigInt], s: &[BigRational; 4], u: &[BigRational; 4], v: &[BigRational; 4]| {
        let umv: [BigRational; 4] = core::array::from_fn(|i| &u[i] - &v[i]);
        lam1(lam, &tensor(s, v), s, &umv, &wedge2(u, v).0)
    };
    let e2 = |lam: &[BigInt], s: &[BigRational; 4], t: &[BigRational; 4], u: &[BigRational; 4], v: &[BigRational; 4]| {
        let w = wedge2(u, v);
        lam1(lam, &tensor(t, v), s, u, &w.0) - lam1(lam, &tensor(s, u), t, v, &w.0)
    };
    let noise = random_lambda(&mut r);
    let mut noise_differs = false;
    for _ in 0..10 {
        let (s, u, v) = (rat4(rand4(&mut r)), rat4(rand4(&mut r)), rat4(rand4(&mut r)));
        assert_eq!(e2(&lam, &s, &s, &u, &v), q(2) * e1(&lam, &s, &u, &v));
        noise_differs |= e2(&noise, &s, &s, &u, &v) != q(2) * e1(&noise, &s, &u, &v);
    }
    // the identity genuinely depends on C1
    assert!(noise_differs);
}

fn restrict(sys: &EquationSystem, block: usize) -> EquationSystem {
    let mut out = sys.clone();
    for row in &mut out.rows {
        row.rhs.0.retain(|k, _| k / SYM2_W_DIM == block);
    }
    out
}

#[test]
fn blockwise_and_one_shot_agree() {
    let one = ObstructionContext::new(assemble_system(1, AssembleOptions::default()));
    let mut reassembled: BTreeMap<usize, SparseT> = BTreeMap::new();
    let mut blocks_free = Vec::new();
    for g in 0..SYM2_GP_DIM {
        let blk = ObstructionContext::new(restrict(&one.system, g));
        assert_eq!(blk.rank(), one.rank());
        for (k, v) in &blk.obstructions {
            assert!(v.0.keys().all(|i| i / SYM2_W_DIM == g));
            reassembled.entry(*k).or_default().add_scaled(&BigInt::from(1), v);
        }
        blocks_free.push(blk.obstructions.is_empty());
    }
    let one_shot: BTreeMap<usize, SparseT> = one.obstructions.iter().cloned().collect();
    reassembled.retain(|_, v| !v.is_zero());
    assert_eq!(reassembled, one_shot);
    assert!(blocks_free.iter().any(|f| !f));

    // without descent every block is solvable and the block solutions add up
    let free = assemble_system(1, AssembleOptions { omit_descent: true, ..Default::default() });
    let ctx = ObstructionContext::new(free.clone());
    let mut total: BTreeMap<usize, BTreeMap<usize, BigRational>> = BTreeMap::new();
    for g in 0..SYM2_GP_DIM {
        let blk = ObstructionContext::new(restrict(&free, g));
        let ModLOutcome::Solvable(sol) = solvable_mod_sublattice(&blk, &SublatticeSpec::zero()) else {
            panic!("block {g} unsolvable");
        };
        assert!(sol.residuals.is_empty());
        for (s, v) in sol.lambda {
            let e = total.entry(s).or_default();
            for (k, x) in v {
                assert_eq!(k / SYM2_W_DIM, g);
                e.insert(k, x);
            }
        }
    }
    let sol = ModLSolution { lambda: total, residuals: BTreeMap::new() };
    assert!(sol.verify(&ctx.system, &SublatticeSpec::zero().t_lattice(1), &ctx.ambient_lattice()));
}

fn independent_exact_check(sys: &EquationSystem, w: &ExactWitness) {
    let mut ya = vec![BigInt::zero(); sys.nslots];
    let mut yr = vec![BigInt::zero(); T_DIM];
    for (i, c) in &w.y {
        for (s, v) in &sys.rows[*i].entries {
            ya[*s] += c * v;
        }
        for (k, v) in &sys.rows[*i].rhs.0 {
            yr[*k] += c * v;
        }
    }
    assert!(ya.iter().all(|x| x.is_zero()));
    assert!(yr.iter().any(|x| !x.is_zero()));
}

#[test]
fn on_the_nose_infeasible_at_d1_and_d2() {
    for d in [1, 2] {
        let ctx = ObstructionContext::new(assemble_system(d, AssembleOptions::default()));
        let w = solve_exact_infeasibility(&ctx).expect("infeasible on the nose");
        assert!(w.verify(&ctx.system));
        independent_exact_check(&ctx.system, &w);
        let zero = solvable_mod_sublattice(&ctx, &SublatticeSpec::zero());
        assert!(!zero.is_solvable());
        assert!(zero.verify(&ctx, &SublatticeSpec::zero()));
    }
}

#[test]
fn counts_and_rank_at_d1() {
    let sys = assemble_system(1, AssembleOptions::default());
    assert_eq!(sys.count(RowKind::E1), 1720);
    assert_eq!(sys.count(RowKind::E2), 1440);
    assert_eq!(sys.count(RowKind::C1), 960);
    assert_eq!((0..4).map(|i| sys.count(RowKind::C2(i))).sum::<usize>(), 384);
    let ctx = ObstructionContext::new(sys);
    assert_eq!(ctx.rank(), 1491);
}

fn theta_rhs(d: i64) -> SparseT {
    let th = &w_vectors(d)[0];
    SparseT(th.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.to_integer())).collect())
}

#[test]
fn planted_theta_is_detected() {
    let sys = assemble_system(1, AssembleOptions::default());
    let ctx = ObstructionContext::new(sys.doctored(&theta_rhs(1)));
    assert_eq!(ctx.image_dim(), 1);
    for (l, expect) in [
        (SublatticeSpec::zero(), false),
        (SublatticeSpec::theta(), true),
        (SublatticeSpec::w(), true),
        (SublatticeSpec::from_i64(&[[0, 1, 0], [0, 0, 1]]), false),
    ] {
        let out = solvable_mod_sublattice(&ctx, &l);
        assert_eq!(out.is_solvable(), expect, "{l:?}");
        assert!(out.verify(&ctx, &l));
    }
    let sc = proper_sublattice_scan(&ctx);
    assert!(sc.mod_w_certificate_ok);
    assert!(!sc.no_proper_sublattice());
    assert_eq!(sc.j_rank, 1);
    assert!(!sc.rational_scan_empty());
    for f in &sc.rational_functionals {
        // every functional killing J kills θ
        assert!(f[0].is_zero());
    }
    for ps in &sc.prime_scans {
        assert!(ps.certificates_ok);
        for f in &ps.solvable {
            assert_eq!(f[0].rem_euclid(ps.p), 0);
        }
    }
}

#[test]
fn good_prime_prediction_matches_explicit_solve() {
    let sys = assemble_system(1, AssembleOptions::default());
    let ctx = ObstructionContext::new(sys.doctored(&theta_rhs(1)));
    let sc = proper_sublattice_scan(&ctx);
    let p = first_good_prime(&sc.bad_primes);
    for f in projective_functionals(p) {
        let l = SublatticeSpec::kernel_mod_p(&f, p);
        let out = solvable_mod_sublattice(&ctx, &l);
        assert!(out.verify(&ctx, &l));
        assert_eq!(predicted_at_good_prime(&sc.j_generators, &f, p), out.is_solvable(), "f = {f:?}");
    }
}

#[test]
fn solvability_is_monotone_along_chains() {
    let sys = assemble_system(1, AssembleOptions::default());
    let ctx = ObstructionContext::new(sys.doctored(&theta_rhs(1)));
    let chain = [
        SublatticeSpec::zero(),
        SublatticeSpec::from_i64(&[[4, 0, 0]]),
        SublatticeSpec::from_i64(&[[2, 0, 0]]),
        SublatticeSpec::from_i64(&[[2, 0, 0], [0, 1, 0]]),
        SublatticeSpec::from_i64(&[[1, 0, 0], [0, 1, 0]]),
        SublatticeSpec::w(),
    ];
    let mut seen = false;
    for l in &chain {
        let ok = solvable_mod_sublattice(&ctx, l).is_solvable();
        assert!(!seen || ok, "monotonicity broken at {l:?}");
        seen |= ok;
    }
    assert!(seen);
}

#[test]
fn real_system_scan_is_empty_at_d1() {
    let ctx = ObstructionContext::new(assemble_system(1, AssembleOptions::default()));
    let sc = proper_sublattice_scan(&ctx);
    assert!(sc.mod_w_certificate_ok);
    assert!(sc.no_proper_sublattice());
    for ps in &sc.prime_scans {
        assert_eq!(ps.tested as i64, ps.p * ps.p + ps.p + 1);
        assert!(ps.certificates_ok);
    }
}

fn random_cell(r: &mut ChaCha8Rng) -> Cell {
    let x: Vec<BigRational> = (0..16).map(|_| tropweil_core::qq(r.gen_range(-6..=6), r.gen_range(1..=3))).collect();
    loop {
        let (u, v) = (g2(rand4(r)), g2(rand4(r)));
        if wedge2(&u, &v).0.iter().all(|c| c.is_zero()) {
            continue;
        }
        let s = gp(rand4(r));
        if s.iter().all(|c| c.is_zero()) {
            continue;
        }
        if r.gen_bool(0.5) {
            return Cell::triangle(x, s, u, v, q(1));
        }
        let t = gp(rand4(r));
        if t.iter().all(|c| c.is_zero()) {
            continue;
        }
        return Cell::parallelogram(x, s, t, u, v, q(1));
    }
}

#[test]
fn on_the_nose_lambda_passes_chain_verification() {
    let ctx = ObstructionContext::new(assemble_system(1, AssembleOptions { omit_descent: true, ..Default::default() }));
    let ModLOutcome::Solvable(sol) = solvable_mod_sublattice(&ctx, &SublatticeSpec::zero()) else {
        panic!("solvable without descent");
    };
    let lam = Lambda::from_solution(1, &sol);
    let mut r = rng(3);
    let chains: Vec<Chain> = (0..12)
        .map(|_| {
            let mut ch = Chain::new(1);
            ch.push(random_cell(&mut r));
            ch
        })
        .collect();
    let rep = verify_candidate_phi(&lam, &SublatticeSpec::zero(), &chains);
    assert!(rep.all_pass(), "{} failures", rep.failures());

    // bump one slot the first cell actually uses
    let report = derive_reduced_equations();
    let coeffs = cell_coefficients(&report, &chains[0].cells[0]);
    let slot = coeffs.iter().position(|c| !c.is_zero()).expect("cell touches λ");
    let mut bumped = lam.clone();
    *bumped.values.entry(slot).or_default().entry(0).or_insert_with(BigRational::zero) += q(1);
    let rep = verify_candidate_phi(&bumped, &SublatticeSpec::zero(), &chains[..1]);
    assert!(!rep.all_pass());
}
