//! Assembly of the λ1-system.
//!
//! Unknowns: `λ1(x; s; u)(ω) ∈ T`, quadrilinear on
//! `(Γ2⊗Γp) × Γp × Γ2 × ∧²Γ2`, slot `((x·4+q)·4+m)·6+w` with `x = 4p+k`.
//! λ0 is declared too (it follows λ1) and its absence from every row is
//! asserted.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::SparseT;
use crate::multilinear::{ArgExpr, Kind, LhsTerm, LinExpr, RhsTerm, Schema, Var};
use crate::q;
use crate::weil::gamma_column;

pub const LAMBDA1_SLOTS: usize = 16 * 4 * 4 * 6;
pub const LAMBDA0_SLOTS: usize = 4 * 4 * 6;

/// Slot of `λ1(e_{x}; e_q; e_m)(e_w)`.
pub fn lambda1_slot(x: usize, q: usize, m: usize, w: usize) -> usize {
    ((x * 4 + q) * 4 + m) * 6 + w
}

/// Inverse of [`lambda1_slot`]: `(x, q, m, w)`.
pub fn lambda1_unslot(slot: usize) -> (usize, usize, usize, usize) {
    (slot / 96, (slot / 24) % 4, (slot / 6) % 4, slot % 6)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RowKind {
    /// Triangle equation `λ1(s⊗v; s; u−v)(u∧v) = s²(u∧v)²`.
    E1,
    /// Parallelogram equation `[λ1(t⊗v; s; u) − λ1(s⊗u; t; v)](u∧v) = 2st(u∧v)²`.
    E2,
    /// Directional invariance `λ1(t⊗u; s; u)(ω) = 0`.
    C1,
    /// Γ1-descent `λ1(γ_i; s; u)(ω) = 0`.
    C2(usize),
}

impl fmt::Display for RowKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowKind::E1 => write!(f, "E1'"),
            RowKind::E2 => write!(f, "E2'"),
            RowKind::C1 => write!(f, "C1"),
            RowKind::C2(i) => write!(f, "C2[gamma{}]", i + 1),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AssembleOptions {
    /// C2 rows carry residuals like E1'/E2'.
    pub slack_descent: bool,
    /// Leave out C2 altogether (diagnostic).
    pub omit_descent: bool,
}

/// One polarized component: `Σ entries·λ1 = rhs` (integers).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemRow {
    pub kind: RowKind,
    /// Exponents over the flattened coordinates of the schema's variables.
    pub monomial: Vec<u8>,
    pub entries: Vec<(usize, BigInt)>,
    pub rhs: SparseT,
    /// Whether a residual in the target sublattice is admitted.
    pub residual: bool,
}

#[derive(Clone, Debug)]
pub struct EquationSystem {
    pub d: i64,
    pub options: AssembleOptions,
    pub rows: Vec<SystemRow>,
    pub nslots: usize,
    /// `(kind, nontrivial, total)` monomial counts per schema.
    pub counts: Vec<(RowKind, usize, usize)>,
}

fn gp(v: Var) -> LinExpr {
    LinExpr::var(Kind::Gp, v)
}

fn g2(v: Var) -> LinExpr {
    LinExpr::var(Kind::G2, v)
}

fn lam(unknown: usize, coef: i64, x: ArgExpr, s: LinExpr, u: LinExpr, w: ArgExpr) -> LhsTerm {
    LhsTerm { coef: q(coef), unknown, args: vec![x, ArgExpr::Lin(s), ArgExpr::Lin(u), w] }
}

/// Declares λ1 then λ0 and returns λ1's index.
fn declare(sc: &mut Schema) -> usize {
    let l1 = sc.add_unknown("lambda1", &[Kind::X, Kind::Gp, Kind::G2, Kind::W2]);
    sc.add_unknown("lambda0", &[Kind::Gp, Kind::G2, Kind::W2]);
    l1
}

pub fn e1_schema() -> Schema {
    let mut sc = Schema::default();
    let s = sc.add_var("s", Kind::Gp);
    let u = sc.add_var("u", Kind::G2);
    let v = sc.add_var("v", Kind::G2);
    sc.add_group(&[s], 2);
    sc.add_group(&[u, v], 4);
    let l1 = declare(&mut sc);
    let uv = || ArgExpr::Wedge(g2(u), g2(v));
    sc.lhs.push(lam(l1, 1, ArgExpr::Tensor(vec![(gp(s), g2(v))]), gp(s), g2(u).plus(v, q(-1)), uv()));
    sc.rhs.push(RhsTerm { coef: q(1), p: (ArgExpr::Lin(gp(s)), ArgExpr::Lin(gp(s))), w: (uv(), uv()) });
    sc
}

pub fn e2_schema() -> Schema {
    let mut sc = Schema::default();
    let s = sc.add_var("s", Kind::Gp);
    let t = sc.add_var("t", Kind::Gp);
    let u = sc.add_var("u", Kind::G2);
    let v = sc.add_var("v", Kind::G2);
    sc.add_group(&[s], 1);
    sc.add_group(&[t], 1);
    sc.add_group(&[u, v], 4);
    let l1 = declare(&mut sc);
    let uv = || ArgExpr::Wedge(g2(u), g2(v));
    sc.lhs.push(lam(l1, 1, ArgExpr::Tensor(vec![(gp(t), g2(v))]), gp(s), g2(u), uv()));
    sc.lhs.push(lam(l1, -1, ArgExpr::Tensor(vec![(gp(s), g2(u))]), gp(t), g2(v), uv()));
    sc.rhs.push(RhsTerm { coef: q(2), p: (ArgExpr::Lin(gp(s)), ArgExpr::Lin(gp(t))), w: (uv(), uv()) });
    sc
}

pub fn c1_schema() -> Schema {
    let mut sc = Schema::default();
    let t = sc.add_var("t", Kind::Gp);
    let s = sc.add_var("s", Kind::Gp);
    let u = sc.add_var("u", Kind::G2);
    let w = sc.add_var("omega", Kind::W2);
    sc.add_group(&[t], 1);
    sc.add_group(&[s], 1);
    sc.add_group(&[u], 2);
    sc.add_group(&[w], 1);
    let l1 = declare(&mut sc);
    sc.lhs.push(lam(
        l1,
        1,
        ArgExpr::Tensor(vec![(gp(t), g2(u))]),
        gp(s),
        g2(u),
        ArgExpr::Lin(LinExpr::var(Kind::W2, w)),
    ));
    sc
}

/// `γ_i` flattened to Γ2⊗Γp coordinates `4p+k`.
pub fn gamma_vector(d: i64, i: usize) -> Vec<BigRational> {
    let g = gamma_column(d, i);
    let mut out = vec![BigRational::zero(); 16];
    for (k, col) in g.iter().enumerate() {
        for (p, c) in col.iter().enumerate() {
            out[4 * p + k] = c.clone();
        }
    }
    out
}

pub fn c2_schema(d: i64, i: usize) -> Schema {
    let mut sc = Schema::default();
    let s = sc.add_var("s", Kind::Gp);
    let u = sc.add_var("u", Kind::G2);
    let w = sc.add_var("omega", Kind::W2);
    sc.add_group(&[s], 1);
    sc.add_group(&[u], 1);
    sc.add_group(&[w], 1);
    let l1 = declare(&mut sc);
    sc.lhs.push(lam(
        l1,
        1,
        ArgExpr::Const(Kind::X, gamma_vector(d, i)),
        gp(s),
        g2(u),
        ArgExpr::Lin(LinExpr::var(Kind::W2, w)),
    ));
    sc
}

fn to_int(x: &BigRational) -> BigInt {
    assert!(x.denom().is_one(), "non-integral coefficient {x} in assembled row");
    x.numer().clone()
}

fn push_rows(sc: &Schema, kind: RowKind, residual: bool, rows: &mut Vec<SystemRow>, counts: &mut Vec<(RowKind, usize, usize)>) {
    let set = sc.polarize().expect("row schemas are well-formed");
    let total = set.equations.len();
    let mut nontrivial = 0;
    for eq in set.nontrivial() {
        nontrivial += 1;
        let entries: Vec<(usize, BigInt)> = eq
            .lhs
            .iter()
            .map(|(&slot, c)| {
                assert!(slot < LAMBDA1_SLOTS, "lambda0 occurs in a {kind} row");
                (slot, to_int(c))
            })
            .collect();
        let rhs = SparseT(
            eq.rhs.0.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, to_int(v))).collect(),
        );
        rows.push(SystemRow { kind, monomial: eq.monomial.clone(), entries, rhs, residual });
    }
    counts.push((kind, nontrivial, total));
}

/// Builds every row of the system for parameter `d`.
pub fn assemble_system(d: i64, options: AssembleOptions) -> EquationSystem {
    assert!(d >= 1, "d must be positive");
    let mut rows = Vec::new();
    let mut counts = Vec::new();
    push_rows(&e1_schema(), RowKind::E1, true, &mut rows, &mut counts);
    push_rows(&e2_schema(), RowKind::E2, true, &mut rows, &mut counts);
    push_rows(&c1_schema(), RowKind::C1, false, &mut rows, &mut counts);
    if !options.omit_descent {
        for i in 0..4 {
            push_rows(&c2_schema(d, i), RowKind::C2(i), options.slack_descent, &mut rows, &mut counts);
        }
    }
    EquationSystem { d, options, rows, nslots: LAMBDA1_SLOTS, counts }
}

impl EquationSystem {
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn count(&self, kind: RowKind) -> usize {
        self.rows.iter().filter(|r| r.kind == kind).count()
    }

    pub fn sparse_rows(&self) -> Vec<Vec<(usize, BigInt)>> {
        self.rows.iter().map(|r| r.entries.clone()).collect()
    }

    pub fn rhs(&self) -> Vec<SparseT> {
        self.rows.iter().map(|r| r.rhs.clone()).collect()
    }

    /// Indices of the rows of each kind.
    pub fn rows_of(&self, pred: impl Fn(&SystemRow) -> bool) -> Vec<usize> {
        (0..self.rows.len()).filter(|&i| pred(&self.rows[i])).collect()
    }

    /// `row·λ` for a T-valued λ1 (missing slots are zero).
    pub fn apply_row(&self, i: usize, lambda: &BTreeMap<usize, SparseT>) -> SparseT {
        let mut acc = SparseT::default();
        for (slot, c) in &self.rows[i].entries {
            if let Some(v) = lambda.get(slot) {
                acc.add_scaled(c, v);
            }
        }
        acc
    }

    /// The same system with every residual row's right-hand side replaced
    /// by `replacement` (a planted-solution check).
    pub fn doctored(&self, replacement: &SparseT) -> EquationSystem {
        let mut out = self.clone();
        for r in out.rows.iter_mut().filter(|r| r.residual) {
            r.rhs = replacement.clone();
        }
        out
    }
}

/// `Π point^monomial` with the point flattened in variable order.
pub fn monomial_value(monomial: &[u8], flat: &[BigRational]) -> BigRational {
    let mut acc = BigRational::one();
    for (e, x) in monomial.iter().zip(flat) {
        for _ in 0..*e {
            acc *= x;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multilinear::{sym2_index, t_index};

    #[test]
    fn slot_round_trip() {
        for slot in [0, 1, 95, 96, 777, LAMBDA1_SLOTS - 1] {
            let (x, q, m, w) = lambda1_unslot(slot);
            assert_eq!(lambda1_slot(x, q, m, w), slot);
        }
    }

    #[test]
    fn counts_at_d1() {
        let sys = assemble_system(1, AssembleOptions::default());
        assert_eq!(sys.count(RowKind::E1), 1720);
        assert_eq!(sys.count(RowKind::E2), 1440);
        assert_eq!(sys.count(RowKind::C1), 960);
        assert_eq!((0..4).map(|i| sys.count(RowKind::C2(i))).sum::<usize>(), 384);
        assert_eq!(sys.nrows(), 4504);
        assert!(sys.counts.contains(&(RowKind::E1, 1720, 3300)));
        assert!(sys.counts.contains(&(RowKind::E2, 1440, 5280)));
    }

    #[test]
    fn e2_rhs_instance() {
        // (s, t, u, v) = (a, b, e1, e2) gives 2ab e12^2
        let sys = assemble_system(1, AssembleOptions { omit_descent: true, ..Default::default() });
        let mut flat = vec![BigRational::zero(); 16];
        flat[0] = q(1);
        flat[5] = q(1);
        flat[8] = q(1);
        flat[13] = q(1);
        let mut acc = SparseT::default();
        for r in sys.rows.iter().filter(|r| r.kind == RowKind::E2) {
            let m = monomial_value(&r.monomial, &flat);
            assert!(m.denom().is_one());
            acc.add_scaled(m.numer(), &r.rhs);
        }
        let mut expect = SparseT::default();
        expect.0.insert(t_index(sym2_index(4, 0, 1), sym2_index(6, 0, 0)), BigInt::from(2));
        assert_eq!(acc, expect);
    }

    #[test]
    fn c2_kills_gamma1_at_d1() {
        // γ1 = a⊗e1 + b⊗e2 + e⊗e4 for d = 1
        let g = gamma_vector(1, 0);
        let mut expect = vec![BigRational::zero(); 16];
        expect[0] = q(1);
        expect[4 + 1] = q(1);
        expect[12 + 3] = q(1);
        assert_eq!(g, expect);
        let sys = assemble_system(1, AssembleOptions::default());
        let rows: Vec<&SystemRow> = sys.rows.iter().filter(|r| r.kind == RowKind::C2(0)).collect();
        assert_eq!(rows.len(), 96);
        for r in rows {
            assert_eq!(r.entries.len(), 3);
            let (x0, q0, m0, w0) = lambda1_unslot(r.entries[0].0);
            for (slot, c) in &r.entries {
                let (x, qq, m, w) = lambda1_unslot(*slot);
                assert_eq!((qq, m, w), (q0, m0, w0));
                assert_eq!(BigRational::from_integer(c.clone()), g[x]);
                assert!(!g[x0].is_zero());
            }
        }
    }

    #[test]
    fn c1_rows_pair_swapped_slots() {
        let sys = assemble_system(1, AssembleOptions::default());
        for r in sys.rows.iter().filter(|r| r.kind == RowKind::C1) {
            assert!(r.rhs.0.is_empty());
            match r.entries.len() {
                1 => {
                    let (x, _, m, _) = lambda1_unslot(r.entries[0].0);
                    assert_eq!(x % 4, m);
                }
                2 => {
                    let (x1, q1, m1, w1) = lambda1_unslot(r.entries[0].0);
                    let (x2, q2, m2, w2) = lambda1_unslot(r.entries[1].0);
                    assert_eq!((x1 / 4, q1, w1), (x2 / 4, q2, w2));
                    assert_eq!((x1 % 4, m1), (m2, x2 % 4));
                }
                n => panic!("C1 row with {n} entries"),
            }
        }
    }
}
